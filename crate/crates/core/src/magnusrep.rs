//! Representation matrices over ℤ[H]: twist and multitwist matrices from
//! the twist formula, composition, application to chains and traces.
//!
//! Convention: row `i` of a matrix is the image of the basis arc `sᵢ`, so a
//! chain `c` (a row vector) maps to `c·M`. This is the layout of the Fox
//! matrix `(∂f(zᵢ)/∂zⱼ)`. [`RepMatrix::compose`] is composition of maps,
//! `compose(M, N) = M ∘ N` (apply `N` first); as raw arrays that is `N·M`.

use std::fmt;

use serde_json::{json, Value};

use crate::chains::Chain;
use crate::error::{check_genus, check_valid_genus, Error, Result};
use crate::freegroup::FreeWord;
use crate::groupring::GroupRingElem;
use crate::pairing::PairingTable;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RepMatrix {
    genus: usize,
    rows: Vec<Vec<GroupRingElem>>,
}

impl RepMatrix {
    pub fn from_rows(genus: usize, rows: Vec<Vec<GroupRingElem>>) -> Result<Self> {
        check_valid_genus(genus)?;
        let n = 2 * genus;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::precondition(format!("a matrix of genus {genus} is {n}x{n}")));
        }
        for x in rows.iter().flatten() {
            check_genus(genus, x.genus())?;
        }
        Ok(RepMatrix { genus, rows })
    }

    /// The matrix whose row `i` is the chain `images[i]`.
    pub fn from_images(genus: usize, images: &[Chain]) -> Result<Self> {
        for c in images {
            check_genus(genus, c.genus())?;
        }
        Self::from_rows(genus, images.iter().map(|c| c.coords().to_vec()).collect())
    }

    pub fn identity(genus: usize) -> Self {
        let n = 2 * genus;
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { GroupRingElem::one(genus) } else { GroupRingElem::zero(genus) })
                    .collect()
            })
            .collect();
        RepMatrix { genus, rows }
    }

    pub fn zero(genus: usize) -> Self {
        RepMatrix { genus, rows: vec![vec![GroupRingElem::zero(genus); 2 * genus]; 2 * genus] }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn size(&self) -> usize {
        2 * self.genus
    }

    pub fn entry(&self, i: usize, j: usize) -> &GroupRingElem {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<GroupRingElem>] {
        &self.rows
    }

    /// The image of basis arc `sᵢ`.
    pub fn image_of_basis(&self, i: usize) -> Chain {
        Chain::from_coords(self.genus, self.rows[i].clone()).expect("row has 2g entries")
    }

    /// The image of a chain: `(c·M)ⱼ = Σᵢ cᵢ Mᵢⱼ`.
    pub fn apply(&self, c: &Chain) -> Result<Chain> {
        check_genus(self.genus, c.genus())?;
        let n = self.size();
        let mut out = vec![GroupRingElem::zero(self.genus); n];
        for (i, ci) in c.coords().iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = &self.rows[i][j];
                if !m.is_zero() {
                    *o += &(ci * m);
                }
            }
        }
        Chain::from_coords(self.genus, out)
    }

    /// Raw array product `self·other`.
    pub fn mul_raw(&self, other: &Self) -> Result<Self> {
        check_genus(self.genus, other.genus)?;
        let n = self.size();
        let mut rows = vec![vec![GroupRingElem::zero(self.genus); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for k in 0..n {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for (j, out) in row.iter_mut().enumerate() {
                    let b = &other.rows[k][j];
                    if !b.is_zero() {
                        *out += &(a * b);
                    }
                }
            }
        }
        Ok(RepMatrix { genus: self.genus, rows })
    }

    /// `self ∘ other` as maps: apply `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        other.mul_raw(self)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_genus(self.genus, other.genus)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
            .collect();
        Ok(RepMatrix { genus: self.genus, rows })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_genus(self.genus, other.genus)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
            .collect();
        Ok(RepMatrix { genus: self.genus, rows })
    }

    pub fn scale(&self, r: &GroupRingElem) -> Self {
        let rows = self.rows.iter().map(|row| row.iter().map(|x| r * x).collect()).collect();
        RepMatrix { genus: self.genus, rows }
    }

    pub fn trace(&self) -> GroupRingElem {
        let mut out = GroupRingElem::zero(self.genus);
        for i in 0..self.size() {
            out += &self.rows[i][i];
        }
        out
    }

    /// `t(M) = tr(M) − 2g`.
    pub fn t_value(&self) -> GroupRingElem {
        &self.trace() - &GroupRingElem::constant(self.genus, 2 * self.genus as i64)
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(GroupRingElem::is_zero)
    }

    /// Row-major JSON: `{ "genus": g, "rows": [[elem, ...], ...] }`.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<Value>> =
            self.rows.iter().map(|r| r.iter().map(GroupRingElem::to_json).collect()).collect();
        json!({ "genus": self.genus, "rows": rows })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let genus = value
            .get("genus")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("matrix is missing \"genus\"".into()))? as usize;
        let rows = value
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("matrix is missing \"rows\"".into()))?;
        let rows = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Json("matrix row is not an array".into()))?
                    .iter()
                    .map(|x| GroupRingElem::from_json(x, genus))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(genus, rows)
    }

    /// A 2g×2g grid of polynomial strings, columns aligned.
    pub fn to_grid(&self) -> String {
        let cells: Vec<Vec<String>> =
            self.rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        let n = self.size();
        let widths: Vec<usize> = (0..n)
            .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            out.push_str(line.join(" | ").trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for RepMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_grid())
    }
}

fn nullhomologous_lift(w: &FreeWord) -> Result<Chain> {
    if !w.is_nullhomologous() {
        return Err(Error::precondition(format!(
            "word {w} is not null-homologous; its lift is an arc, not a curve"
        )));
    }
    Ok(Chain::lift(w))
}

/// `I + Σ nₖ·(sᵢ ↦ ⟨sᵢ, cₖ⟩·cₖ)` for curves `cₖ`.
fn rank_one_sum(table: &PairingTable, curves: &[(Chain, i64)]) -> Result<RepMatrix> {
    let g = table.genus();
    let mut images = Vec::with_capacity(2 * g);
    for i in 0..2 * g {
        let s = Chain::basis(g, i)?;
        let mut img = s.clone();
        for (c, n) in curves {
            if *n == 0 {
                continue;
            }
            let p = table.pair_curve(&s, c)?;
            if !p.is_zero() {
                let coeff = p.scale(&(*n).into());
                img = img.try_add(&c.scale(&coeff))?;
            }
        }
        images.push(img);
    }
    RepMatrix::from_images(g, &images)
}

/// The twist formula: the matrix of `d ↦ d + n·⟨d, c⟩·c` with `c` the lift
/// of `w`.
pub fn twist_matrix(table: &PairingTable, w: &FreeWord, n: i64) -> Result<RepMatrix> {
    check_genus(table.genus(), w.genus())?;
    let c = nullhomologous_lift(w)?;
    rank_one_sum(table, &[(c, n)])
}

/// A formal product `T_{w₁}^{n₁}⋯T_{w_k}^{n_k}` of positive twist powers
/// whose lifts pair trivially with each other and with themselves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiTwist {
    genus: usize,
    factors: Vec<(FreeWord, u64)>,
    lifts: Vec<Chain>,
    certified: bool,
}

impl MultiTwist {
    /// Checks every condition and returns a certified multitwist.
    pub fn new(table: &PairingTable, factors: Vec<(FreeWord, u64)>) -> Result<Self> {
        let mt = Self::new_uncertified(table.genus(), factors)?;
        for (a, ca) in mt.lifts.iter().enumerate() {
            for (b, cb) in mt.lifts.iter().enumerate().skip(a) {
                let p = table.pair_curve(ca, cb)?;
                if !p.is_zero() {
                    return Err(Error::precondition(format!(
                        "factors {} and {} of the multitwist pair to {p}, not 0",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        Ok(MultiTwist { certified: true, ..mt })
    }

    /// Checks shapes only (null-homologous words, positive multiplicities).
    /// Matrix and trace routines refuse the result.
    pub fn new_uncertified(genus: usize, factors: Vec<(FreeWord, u64)>) -> Result<Self> {
        check_valid_genus(genus)?;
        if factors.is_empty() {
            return Err(Error::precondition("a multitwist needs at least one factor"));
        }
        let mut lifts = Vec::with_capacity(factors.len());
        for (w, n) in &factors {
            check_genus(genus, w.genus())?;
            if *n == 0 {
                return Err(Error::precondition("multitwist multiplicities must be positive"));
            }
            lifts.push(nullhomologous_lift(w)?);
        }
        Ok(MultiTwist { genus, factors, lifts, certified: false })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn factors(&self) -> &[(FreeWord, u64)] {
        &self.factors
    }

    pub fn lifts(&self) -> &[Chain] {
        &self.lifts
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub(crate) fn require_certified(&self) -> Result<()> {
        if self.certified {
            Ok(())
        } else {
            Err(Error::precondition("multitwist is not certified"))
        }
    }
}

impl fmt::Display for MultiTwist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("M[")?;
        for (k, (w, n)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({w})^{n}")?;
        }
        f.write_str("]")
    }
}

/// The matrix of `d ↦ d + Σ nᵢ·⟨d, cᵢ⟩·cᵢ`.
pub fn multitwist_matrix(table: &PairingTable, t: &MultiTwist) -> Result<RepMatrix> {
    check_genus(table.genus(), t.genus())?;
    t.require_certified()?;
    multitwist_power_matrix(table, t, 1)
}

/// The matrix of `T^p` for a certified multitwist `T`, i.e. `I + p·A` where
/// `A = r(T) − I` (valid since `A² = 0`).
pub fn multitwist_power_matrix(table: &PairingTable, t: &MultiTwist, p: i64) -> Result<RepMatrix> {
    check_genus(table.genus(), t.genus())?;
    t.require_certified()?;
    let curves: Vec<(Chain, i64)> = t
        .lifts
        .iter()
        .zip(&t.factors)
        .map(|(c, (_, n))| (c.clone(), *n as i64 * p))
        .collect();
    rank_one_sum(table, &curves)
}

/// Composition `r(T₁^{n₁})∘⋯∘r(T_k^{n_k})` for a sequence of twists.
pub fn twist_product_matrix(table: &PairingTable, twists: &[(FreeWord, i64)]) -> Result<RepMatrix> {
    let mut m = RepMatrix::identity(table.genus());
    for (w, n) in twists {
        m = m.compose(&twist_matrix(table, w, *n)?)?;
    }
    Ok(m)
}
