use std::path::Path;
use std::process::{Command, Output};

use magnus_core::{Chain, FreeWord, GroupRingElem, PairingTable, RepMatrix};
use serde_json::Value;
use tempfile::TempDir;

fn magnus(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magnus"))
        .env("MAGNUS_TABLE_DIR", cache)
        .args(args)
        .output()
        .expect("spawn magnus")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(cache: &Path, args: &[&str]) -> String {
    let out = magnus(cache, args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

fn json(cache: &Path, args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    serde_json::from_str(&ok(cache, &full)).expect("valid json")
}

#[test]
fn trace_of_disjoint_twists_is_zero() {
    let dir = TempDir::new().unwrap();
    assert_eq!(ok(dir.path(), &["trace", "--genus", "2", "T[[A1,B1]] T[[A2,B2]]"]).trim(), "0");
}

#[test]
fn commutator_of_disjoint_twists_is_in_kernel() {
    let dir = TempDir::new().unwrap();
    assert_eq!(ok(dir.path(), &["commutator", "--genus", "2", "[A1,B1]", "[A2,B2]"]).trim(), "in-kernel: true");
    let crossing = ok(dir.path(), &["commutator", "--genus", "2", "[A1,B1]", "[A1 A2,B2]"]);
    assert_eq!(crossing.trim(), "in-kernel: false");
}

#[test]
fn lift_of_genus_one_commutator() {
    let dir = TempDir::new().unwrap();
    assert_eq!(ok(dir.path(), &["lift", "--genus", "1", "[A1,B1]"]).trim(), "alpha1: 1 - b1 ; beta1: a1 - 1");
}

#[test]
fn json_outputs_round_trip() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();

    let lifted = Chain::from_json(&json(p, &["lift", "--genus", "2", "[A1 A2,B2]"])).unwrap();
    assert_eq!(lifted, Chain::lift(&FreeWord::parse("[A1 A2,B2]", 2).unwrap()));

    let pairing = json(p, &["pair", "--genus", "2", "--sigma", "+", "[A1,B1]", "[A1 A2,B2]"]);
    let pairing = GroupRingElem::from_json(&pairing, 2).unwrap();
    let text = ok(p, &["pair", "--genus", "2", "--sigma", "+", "[A1,B1]", "[A1 A2,B2]"]);
    assert_eq!(pairing.to_string(), text.trim());
    assert!(!pairing.is_zero());

    let m = RepMatrix::from_json(&json(p, &["rep", "--genus", "2", "T[[A1,B1]]^2"])).unwrap();
    assert_eq!(m.genus(), 2);
    assert!(!m.is_identity());

    let table = PairingTable::from_json(&json(p, &["derive-table", "--genus", "2"])["table"]).unwrap();
    assert_eq!(table, PairingTable::derive(2).unwrap());
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let args = ["classify", "--genus", "2", "--format", "json", "M[[A1,B1]]", "M[[A1 A2,B2]]"];
    let first = ok(dir.path(), &args);
    // The second run reads the cached table instead of deriving it.
    assert_eq!(first, ok(dir.path(), &args));
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["kind"], "free_in_image");
    assert_eq!(v["witness"]["i"], 1);
    assert_eq!(v["trace_identity_checked"], true);
}

#[test]
fn table_cache_is_written_and_reused() {
    let dir = TempDir::new().unwrap();
    ok(dir.path(), &["trace", "--genus", "2", "T[[A1,B1]]"]);
    let path = dir.path().join("table_g2.json");
    assert!(path.exists());
    let cached: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(PairingTable::from_json(&cached).unwrap(), PairingTable::derive(2).unwrap());

    // A corrupted cache is replaced, not trusted.
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(ok(dir.path(), &["trace", "--genus", "2", "T[[A1,B1]] T[[A2,B2]]"]).trim(), "0");
    let repaired: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(PairingTable::from_json(&repaired).is_ok());
}

#[test]
fn explicit_table_file() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("custom.json");
    let f = file.to_str().unwrap();
    ok(dir.path(), &["derive-table", "--genus", "1", "--table", f]);
    assert!(ok(dir.path(), &["selftest", "--genus", "1", "--table", f]).starts_with("selftest: ok"));
    // Genus of the file must match the request.
    assert_eq!(magnus(dir.path(), &["trace", "--genus", "2", "--table", f, "T[[A1,B1]]"]).status.code(), Some(2));
    // A missing file is a configuration error.
    let missing = dir.path().join("missing.json");
    let out = magnus(dir.path(), &["trace", "--genus", "1", "--table", missing.to_str().unwrap(), "T[[A1,B1]]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn norelation_reports_word_counts() {
    let dir = TempDir::new().unwrap();
    let v = json(dir.path(), &["norelation", "--genus", "2", "--max-length", "2", "M[[A1,B1]^1, [A2,B2]^2]", "M[[A1 A2,B2]]"]);
    assert_eq!(v["words_per_length"], serde_json::json!([4, 12]));
    assert_eq!(v["relation"], Value::Null);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    // Malformed words and out-of-range generators.
    assert_eq!(magnus(p, &["lift", "--genus", "1", "A3"]).status.code(), Some(2));
    assert_eq!(magnus(p, &["lift", "--genus", "1", "[A1,B1"]).status.code(), Some(2));
    assert_eq!(magnus(p, &["trace", "--genus", "0", "T[[A1,B1]]"]).status.code(), Some(2));
    assert_eq!(magnus(p, &["pair", "--genus", "1", "--sigma", "x", "A1", "B1"]).status.code(), Some(2));
    // Missing required flag (clap usage error).
    assert_eq!(magnus(p, &["lift", "[A1,B1]"]).status.code(), Some(2));
    // Well-formed but mathematically inadmissible: neither word is a curve.
    assert_eq!(magnus(p, &["pair", "--genus", "2", "A1", "B1"]).status.code(), Some(1));
    // Crossing components cannot form a multitwist.
    assert_eq!(magnus(p, &["classify", "--genus", "2", "M[[A1,B1], [A1 A2,B2]]", "M[[A2,B2]]"]).status.code(), Some(1));
}
