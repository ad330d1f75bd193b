//! The higher intersection forms ⟨·,·⟩₊ and ⟨·,·⟩₋ on the chain module.
//!
//! Both forms are determined by their values on the basis arcs, which are
//! computed by the cover-model oracle and then extended sesquilinearly:
//! `⟨Σ cᵢsᵢ, Σ dⱼsⱼ⟩_σ = Σ cᵢ·d̄ⱼ·⟨sᵢ,sⱼ⟩_σ`.

use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::chains::{basis_name, symplectic_form, Chain};
use crate::covermodel::pairing_oracle;
use crate::error::{check_genus, check_valid_genus, Error, Result};
use crate::groupring::GroupRingElem;

/// Which way the second basepoint is reached along the boundary.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }

    pub fn parse(s: &str) -> Option<Sign> {
        match s {
            "+" | "plus" => Some(Sign::Plus),
            "-" | "minus" => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Identifies the conventions a table was derived under; stored in golden
/// files so that a table from an incompatible model is rejected.
pub const TWIST_HANDEDNESS: &str = "conjugation: x -> d^n x d^-n";
pub const BOUNDARY_ORIENTATION: &str = "surface on the left; *' follows * in the positive direction";
pub const BASIS_ORDER: &str = "alpha1..alphag, beta1..betag";
const TABLE_FORMAT: &str = "magnus-pairing-table";
const TABLE_VERSION: u64 = 1;

/// Oracle window radius used by [`PairingTable::derive`].
pub const DEFAULT_RADIUS: i32 = 2;

/// The values `⟨sᵢ, sⱼ⟩_σ` on basis arcs, certified against the structural
/// constraints on construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairingTable {
    genus: usize,
    plus: Vec<Vec<GroupRingElem>>,
    minus: Vec<Vec<GroupRingElem>>,
}

impl PairingTable {
    /// Derives the table from the cover-model oracle with window radius 2.
    pub fn derive(genus: usize) -> Result<Self> {
        Self::derive_with_radius(genus, DEFAULT_RADIUS)
    }

    pub fn derive_with_radius(genus: usize, radius: i32) -> Result<Self> {
        check_valid_genus(genus)?;
        let n = 2 * genus;
        let mut grids = Vec::with_capacity(2);
        for sign in Sign::BOTH {
            let mut grid = Vec::with_capacity(n);
            for i in 0..n {
                let row = (0..n)
                    .map(|j| pairing_oracle(genus, i, j, sign, radius))
                    .collect::<Result<Vec<_>>>()?;
                grid.push(row);
            }
            grids.push(grid);
        }
        let minus = grids.pop().expect("two grids");
        let plus = grids.pop().expect("two grids");
        Self::from_entries(genus, plus, minus).map_err(|e| match e {
            Error::InvalidTable(msg) => Error::Inconsistency(format!("oracle table rejected: {msg}")),
            other => other,
        })
    }

    /// Builds a table from explicit entries, checking every structural
    /// constraint.
    pub fn from_entries(
        genus: usize,
        plus: Vec<Vec<GroupRingElem>>,
        minus: Vec<Vec<GroupRingElem>>,
    ) -> Result<Self> {
        check_valid_genus(genus)?;
        let n = 2 * genus;
        for grid in [&plus, &minus] {
            if grid.len() != n || grid.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidTable(format!("expected a {n}x{n} grid per sign")));
            }
            for x in grid.iter().flatten() {
                check_genus(genus, x.genus())?;
            }
        }
        let table = PairingTable { genus, plus, minus };
        table.validate()?;
        Ok(table)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// `⟨sᵢ, sⱼ⟩_σ` (0-based indices).
    pub fn base(&self, sign: Sign, i: usize, j: usize) -> &GroupRingElem {
        match sign {
            Sign::Plus => &self.plus[i][j],
            Sign::Minus => &self.minus[i][j],
        }
    }

    /// Checks the difference formula, antisymmetry across σ, and that the
    /// augmentation reproduces the symplectic form on H.
    pub fn validate(&self) -> Result<()> {
        let g = self.genus;
        let n = 2 * g;
        let name = |i: usize| basis_name(g, i);
        for i in 0..n {
            let di = GroupRingElem::generator_minus_one(g, i);
            for j in 0..n {
                let dj = GroupRingElem::generator_minus_one(g, j);
                let diff = &self.plus[i][j] - &self.minus[i][j];
                if diff != &di * &dj.involute() {
                    return Err(Error::InvalidTable(format!(
                        "<{},{}>+ - <{},{}>- = {diff} is not the product of boundaries",
                        name(i),
                        name(j),
                        name(i),
                        name(j)
                    )));
                }
                for sign in Sign::BOTH {
                    let lhs = self.base(sign, j, i);
                    let rhs = -self.base(sign.opposite(), i, j).involute();
                    if *lhs != rhs {
                        return Err(Error::InvalidTable(format!(
                            "antisymmetry fails for <{},{}>{sign}",
                            name(j),
                            name(i)
                        )));
                    }
                    let unit = |k: usize| -> Vec<BigInt> {
                        (0..n).map(|m| BigInt::from((m == k) as i32)).collect()
                    };
                    let expected = symplectic_form(&unit(i), &unit(j));
                    if self.base(sign, i, j).augmentation() != expected {
                        return Err(Error::InvalidTable(format!(
                            "augmentation of <{},{}>{sign} is not {expected}",
                            name(i),
                            name(j)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `⟨c, d⟩_σ = Σ cᵢ·d̄ⱼ·⟨sᵢ,sⱼ⟩_σ`.
    pub fn pair(&self, c: &Chain, d: &Chain, sign: Sign) -> Result<GroupRingElem> {
        check_genus(self.genus, c.genus())?;
        check_genus(self.genus, d.genus())?;
        let n = 2 * self.genus;
        let mut out = GroupRingElem::zero(self.genus);
        let dbar: Vec<GroupRingElem> = d.coords().iter().map(GroupRingElem::involute).collect();
        for i in 0..n {
            let ci = c.coord(i);
            if ci.is_zero() {
                continue;
            }
            let mut inner = GroupRingElem::zero(self.genus);
            for (j, dj) in dbar.iter().enumerate() {
                if !dj.is_zero() {
                    inner += &(dj * self.base(sign, i, j));
                }
            }
            out += &(ci * &inner);
        }
        Ok(out)
    }

    /// The common value of both forms when at least one argument is a curve.
    pub fn pair_curve(&self, c: &Chain, d: &Chain) -> Result<GroupRingElem> {
        check_genus(self.genus, c.genus())?;
        check_genus(self.genus, d.genus())?;
        if !c.is_curve() && !d.is_curve() {
            return Err(Error::precondition(
                "neither argument is a curve; the two forms differ, choose a sign",
            ));
        }
        let plus = self.pair(c, d, Sign::Plus)?;
        let minus = self.pair(c, d, Sign::Minus)?;
        if plus != minus {
            return Err(Error::Inconsistency(format!(
                "forms disagree on a curve: {plus} vs {minus}"
            )));
        }
        Ok(plus)
    }

    /// Some basis index `j` with `⟨c, sⱼ⟩_σ ≠ 0`; `None` exactly when `c = 0`.
    pub fn nondegeneracy_witness(&self, c: &Chain, sign: Sign) -> Result<Option<usize>> {
        check_genus(self.genus, c.genus())?;
        for j in 0..2 * self.genus {
            let s = Chain::basis(self.genus, j)?;
            if !self.pair(c, &s, sign)?.is_zero() {
                return Ok(Some(j));
            }
        }
        if !c.is_zero() {
            return Err(Error::Inconsistency(format!("nonzero chain {c} pairs to zero with every basis arc")));
        }
        Ok(None)
    }

    pub fn to_json(&self) -> Value {
        let n = 2 * self.genus;
        let mut entries = Map::new();
        for sign in Sign::BOTH {
            for i in 0..n {
                for j in 0..n {
                    entries.insert(format!("{sign}/{}/{}", i + 1, j + 1), self.base(sign, i, j).to_json());
                }
            }
        }
        json!({
            "format": TABLE_FORMAT,
            "version": TABLE_VERSION,
            "genus": self.genus,
            "conventions": {
                "twist_handedness": TWIST_HANDEDNESS,
                "boundary_orientation": BOUNDARY_ORIENTATION,
                "basis_order": BASIS_ORDER,
            },
            "entries": entries,
        })
    }

    /// Reads a table written by [`to_json`](Self::to_json), rejecting files
    /// from other conventions and re-running validation.
    pub fn from_json(value: &Value) -> Result<Self> {
        let field = |k: &str| value.get(k).ok_or_else(|| Error::Json(format!("table is missing \"{k}\"")));
        if field("format")?.as_str() != Some(TABLE_FORMAT) {
            return Err(Error::Json("not a pairing table".into()));
        }
        if field("version")?.as_u64() != Some(TABLE_VERSION) {
            return Err(Error::Json("unsupported table version".into()));
        }
        let genus = field("genus")?.as_u64().ok_or_else(|| Error::Json("bad genus".into()))? as usize;
        check_valid_genus(genus)?;
        let conv = field("conventions")?;
        let expected = [
            ("twist_handedness", TWIST_HANDEDNESS),
            ("boundary_orientation", BOUNDARY_ORIENTATION),
            ("basis_order", BASIS_ORDER),
        ];
        for (k, v) in expected {
            if conv.get(k).and_then(Value::as_str) != Some(v) {
                return Err(Error::InvalidTable(format!("table uses a different convention for {k}")));
            }
        }
        let entries = field("entries")?.as_object().ok_or_else(|| Error::Json("bad entries".into()))?;
        let n = 2 * genus;
        let mut grids = Vec::new();
        for sign in Sign::BOTH {
            let mut grid = Vec::with_capacity(n);
            for i in 0..n {
                let mut row = Vec::with_capacity(n);
                for j in 0..n {
                    let key = format!("{sign}/{}/{}", i + 1, j + 1);
                    let v = entries.get(&key).ok_or_else(|| Error::Json(format!("missing entry {key}")))?;
                    row.push(GroupRingElem::from_json(v, genus)?);
                }
                grid.push(row);
            }
            grids.push(grid);
        }
        if entries.len() != 2 * n * n {
            return Err(Error::Json("unexpected extra table entries".into()));
        }
        let minus = grids.pop().expect("two grids");
        let plus = grids.pop().expect("two grids");
        Self::from_entries(genus, plus, minus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::FreeWord;

    fn e(s: &str, g: usize) -> GroupRingElem {
        GroupRingElem::parse(s, g).unwrap()
    }

    #[test]
    fn genus_one_table() {
        let t = PairingTable::derive(1).unwrap();
        assert_eq!(t.base(Sign::Plus, 0, 1).augmentation(), BigInt::from(1));
        assert_eq!(t.base(Sign::Minus, 1, 0).augmentation(), BigInt::from(-1));
        let d = t.base(Sign::Plus, 0, 1) - t.base(Sign::Minus, 0, 1);
        assert_eq!(d, e("a1 - 1", 1) * e("b1^-1 - 1", 1));
    }

    #[test]
    fn genus_two_matches_reference_entries() {
        let t = PairingTable::derive(2).unwrap();
        assert_eq!(t.base(Sign::Plus, 0, 0), &e("1 - a1", 2));
        assert_eq!(t.base(Sign::Plus, 0, 2), &e("a1*b1^-1", 2));
        assert_eq!(t.base(Sign::Minus, 2, 2), &e("b1 - 1", 2));
        assert_eq!(t.base(Sign::Minus, 2, 0), &e("-a1^-1*b1", 2));
    }

    #[test]
    fn self_pairing_of_delta_vanishes() {
        let t = PairingTable::derive(2).unwrap();
        for k in 1..=2 {
            let c = Chain::lift(&FreeWord::delta(k, 2).unwrap());
            assert!(t.pair_curve(&c, &c).unwrap().is_zero());
        }
    }

    #[test]
    fn pair_curve_requires_a_curve() {
        let t = PairingTable::derive(1).unwrap();
        let a = Chain::basis(1, 0).unwrap();
        assert!(matches!(t.pair_curve(&a, &a), Err(Error::Precondition(_))));
    }

    #[test]
    fn witness_examples() {
        let t = PairingTable::derive(2).unwrap();
        assert_eq!(t.nondegeneracy_witness(&Chain::zero(2), Sign::Plus).unwrap(), None);
        let j = t.nondegeneracy_witness(&Chain::basis(2, 0).unwrap(), Sign::Plus).unwrap().unwrap();
        assert!(!t.pair(&Chain::basis(2, 0).unwrap(), &Chain::basis(2, j).unwrap(), Sign::Plus).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip_and_tamper_detection() {
        let t = PairingTable::derive(1).unwrap();
        let v = t.to_json();
        assert_eq!(PairingTable::from_json(&v).unwrap(), t);
        let mut bad = v.clone();
        bad["entries"]["+/1/2"] = json!([]);
        assert!(PairingTable::from_json(&bad).is_err());
        let mut bad = v;
        bad["conventions"]["twist_handedness"] = json!("other");
        assert!(matches!(PairingTable::from_json(&bad), Err(Error::InvalidTable(_))));
    }
}
