//! `magnus`: command-line front end for magnus-core.
//!
//! Exit status: 0 on success, 1 when a mathematical precondition fails (or
//! a relation is found), 2 on malformed input or configuration.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use magnus_core::analysis::{
    classify_multitwist_pair, commutator_in_kernel, commutator_trace, trace_product_formula, verify_no_relation,
};
use magnus_core::expr::{parse_multitwist, parse_twist_expr};
use magnus_core::magnusrep::twist_matrix;
use magnus_core::{Chain, Error, FreeEndo, FreeWord, PairingTable, Sign};

#[derive(Parser)]
#[command(name = "magnus", version, about = "Magnus representation of the Torelli group: lifts, pairings, matrices and trace criteria")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Genus of the surface (at least 1).
    #[arg(long)]
    genus: usize,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Pairing table file to read (and, for derive-table, to write) instead
    /// of the cache.
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Lift a word to a chain (coordinates are abelianized Fox derivatives).
    Lift {
        #[command(flatten)]
        common: Common,
        word: String,
    },
    /// Pair the lifts of two words. Without --sigma, one of them must be a
    /// curve (null-homologous word).
    Pair {
        #[command(flatten)]
        common: Common,
        /// `+` or `-`.
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<String>,
        left: String,
        right: String,
    },
    /// Representation matrix of a twist expression such as `T[[A1,B1]]^2`.
    Rep {
        #[command(flatten)]
        common: Common,
        expr: String,
    },
    /// t = tr(r(f)) - 2g of a twist expression.
    Trace {
        #[command(flatten)]
        common: Common,
        expr: String,
    },
    /// Decide whether the commutator of two separating twists lies in ker r.
    Commutator {
        #[command(flatten)]
        common: Common,
        left: String,
        right: String,
    },
    /// Classify a pair of multitwists: commuting or free in the image.
    Classify {
        #[command(flatten)]
        common: Common,
        left: String,
        right: String,
    },
    /// Search all short words in a crossing pair of multitwists for relations.
    Norelation {
        #[command(flatten)]
        common: Common,
        /// Longest word length to check.
        #[arg(long, default_value_t = 6)]
        max_length: usize,
        left: String,
        right: String,
    },
    /// Derive the pairing table from the cover model and store it.
    DeriveTable {
        #[command(flatten)]
        common: Common,
    },
    /// Quick consistency checks of the table and conventions.
    Selftest {
        #[command(flatten)]
        common: Common,
    },
}

/// Errors from the CLI layer: library errors plus I/O on table files.
enum CliError {
    Lib(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn cache_dir() -> Option<PathBuf> {
    if let Some(d) = std::env::var_os("MAGNUS_TABLE_DIR") {
        return Some(PathBuf::from(d));
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(d).join("magnus"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("magnus"))
}

fn cache_path(genus: usize) -> Option<PathBuf> {
    cache_dir().map(|d| d.join(format!("table_g{genus}.json")))
}

fn read_table(path: &Path) -> CliResult<PairingTable> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Json(format!("{}: {e}", path.display())))?;
    Ok(PairingTable::from_json(&value)?)
}

fn write_table(path: &Path, table: &PairingTable) -> CliResult<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| CliError::Io(format!("{}: {e}", parent.display())))?;
        }
    }
    let text = serde_json::to_string_pretty(&table.to_json()).expect("table serializes");
    // Write then rename, so a concurrent reader never sees a partial file.
    let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
    fs::write(&tmp, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// The table for `common.genus`: from `--table` if given, else from the
/// cache, deriving (and caching) it on first use.
fn load_table(common: &Common) -> CliResult<PairingTable> {
    let genus = common.genus;
    if let Some(path) = &common.table {
        let t = read_table(path)?;
        if t.genus() != genus {
            return Err(Error::GenusMismatch { left: genus, right: t.genus() }.into());
        }
        return Ok(t);
    }
    if genus == 0 {
        return Err(Error::InvalidGenus(0).into());
    }
    let cached = cache_path(genus);
    if let Some(path) = &cached {
        if path.exists() {
            match read_table(path) {
                Ok(t) if t.genus() == genus => return Ok(t),
                _ => eprintln!("warning: ignoring unreadable table cache {}", path.display()),
            }
        }
    }
    let t = PairingTable::derive(genus)?;
    if let Some(path) = &cached {
        if let Err(CliError::Io(msg)) = write_table(path, &t) {
            eprintln!("warning: could not cache pairing table: {msg}");
        }
    }
    Ok(t)
}

fn parse_sigma(s: &str) -> CliResult<Sign> {
    Sign::parse(s).ok_or_else(|| CliError::Usage(format!("--sigma must be '+' or '-', got '{s}'")))
}

fn emit(format: Format, text: impl FnOnce() -> String, json: impl FnOnce() -> Value) {
    match format {
        Format::Text => println!("{}", text()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&json()).expect("json")),
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Lift { common, word } => {
            let w = FreeWord::parse(&word, common.genus)?;
            let c = Chain::lift(&w);
            emit(common.format, || c.to_string(), || c.to_json());
        }
        Command::Pair { common, sigma, left, right } => {
            let table = load_table(&common)?;
            let c = Chain::lift(&FreeWord::parse(&left, common.genus)?);
            let d = Chain::lift(&FreeWord::parse(&right, common.genus)?);
            let value = match sigma.as_deref() {
                Some(s) => table.pair(&c, &d, parse_sigma(s)?)?,
                None => table.pair_curve(&c, &d)?,
            };
            emit(common.format, || value.to_string(), || value.to_json());
        }
        Command::Rep { common, expr } => {
            let table = load_table(&common)?;
            let m = parse_twist_expr(&expr, &table)?.matrix(&table)?;
            emit(common.format, || m.to_grid().trim_end().to_string(), || m.to_json());
        }
        Command::Trace { common, expr } => {
            let table = load_table(&common)?;
            let e = parse_twist_expr(&expr, &table)?;
            let t = e.matrix(&table)?.t_value();
            // Cross-check with the closed formula whenever it applies.
            let formula_checked = match trace_product_formula(&table, &e.flatten()) {
                Ok(f) if f == t => true,
                Ok(f) => {
                    return Err(Error::Inconsistency(format!("matrix trace {t} but formula gives {f}")).into());
                }
                Err(Error::Precondition(_)) => false,
                Err(other) => return Err(other.into()),
            };
            emit(
                common.format,
                || t.to_string(),
                || json!({ "t": t.to_json(), "text": t.to_string(), "formula_checked": formula_checked }),
            );
        }
        Command::Commutator { common, left, right } => {
            let table = load_table(&common)?;
            let u = FreeWord::parse(&left, common.genus)?;
            let v = FreeWord::parse(&right, common.genus)?;
            let in_kernel = commutator_in_kernel(&table, &u, &v)?;
            let tr = commutator_trace(&table, &u, &v)?;
            let p = table.pair_curve(&Chain::lift(&u), &Chain::lift(&v))?;
            emit(
                common.format,
                || format!("in-kernel: {in_kernel}"),
                || json!({ "in_kernel": in_kernel, "pairing": p.to_json(), "trace": tr.to_json() }),
            );
        }
        Command::Classify { common, left, right } => {
            let table = load_table(&common)?;
            let c = parse_multitwist(&left, &table)?;
            let d = parse_multitwist(&right, &table)?;
            let v = classify_multitwist_pair(&table, &c, &d)?;
            emit(common.format, || v.to_string(), || v.to_json());
        }
        Command::Norelation { common, max_length, left, right } => {
            let table = load_table(&common)?;
            let c = parse_multitwist(&left, &table)?;
            let d = parse_multitwist(&right, &table)?;
            let report = verify_no_relation(&table, &c, &d, max_length)?;
            emit(common.format, || report.to_string(), || report.to_json());
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::DeriveTable { common } => {
            if common.genus == 0 {
                return Err(Error::InvalidGenus(0).into());
            }
            let t = PairingTable::derive(common.genus)?;
            let path = common
                .table
                .clone()
                .or_else(|| cache_path(common.genus))
                .ok_or_else(|| CliError::Io("no cache directory; pass --table or set MAGNUS_TABLE_DIR".into()))?;
            write_table(&path, &t)?;
            emit(
                common.format,
                || format!("wrote {}", path.display()),
                || json!({ "path": path.display().to_string(), "table": t.to_json() }),
            );
        }
        Command::Selftest { common } => {
            let g = common.genus;
            let table = load_table(&common)?;
            table.validate()?;
            let fresh = PairingTable::derive(g)?;
            if fresh != table {
                return Err(Error::Inconsistency("stored table differs from a fresh derivation".into()).into());
            }
            let mut checks = 1;
            for k in 1..=g {
                let delta = FreeWord::delta(k, g)?;
                for n in [1, 2, -1] {
                    if twist_matrix(&table, &delta, n)? != FreeEndo::twist(k, n, g)?.magnus_matrix()? {
                        return Err(Error::Inconsistency(format!("twist routes disagree for k={k}, n={n}")).into());
                    }
                    checks += 1;
                }
                let c = Chain::lift(&delta);
                if c.is_zero() || !table.pair_curve(&c, &c)?.is_zero() {
                    return Err(Error::Inconsistency(format!("lift of delta_{k} misbehaves")).into());
                }
                checks += 1;
            }
            emit(common.format, || format!("selftest: ok ({checks} checks)"), || json!({ "ok": true, "checks": checks }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
        Err(CliError::Io(msg)) | Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
