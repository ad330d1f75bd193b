//! The relative homology module H₁(Ŝ, π⁻¹(*)) ≅ ℤ[H]^{2g}.
//!
//! Chains are dense vectors of ring elements in the basis of lifted arcs
//! `alpha1..alphag, beta1..betag`, all anchored at the preferred lift of
//! the basepoint. Elements of the kernel of the boundary map are *curves*.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{check_genus, check_valid_genus, Error, Result};
use crate::freegroup::FreeWord;
use crate::groupring::{ExponentVector, GroupRingElem};

/// Name of basis arc `idx`: `alpha1..alphag` then `beta1..betag`.
pub fn basis_name(genus: usize, idx: usize) -> String {
    if idx < genus {
        format!("alpha{}", idx + 1)
    } else {
        format!("beta{}", idx - genus + 1)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Chain {
    genus: usize,
    coords: Vec<GroupRingElem>,
}

impl Chain {
    pub fn zero(genus: usize) -> Self {
        Chain { genus, coords: vec![GroupRingElem::zero(genus); 2 * genus] }
    }

    /// The basis arc `s_idx` (`alpha_i` for `idx < g`, else `beta_{idx-g}`).
    pub fn basis(genus: usize, idx: usize) -> Result<Self> {
        if idx >= 2 * genus {
            return Err(Error::IndexOutOfRange { index: idx, genus });
        }
        let mut c = Self::zero(genus);
        c.coords[idx] = GroupRingElem::one(genus);
        Ok(c)
    }

    pub fn from_coords(genus: usize, coords: Vec<GroupRingElem>) -> Result<Self> {
        check_valid_genus(genus)?;
        if coords.len() != 2 * genus {
            return Err(Error::precondition(format!(
                "a chain of genus {genus} has {} coordinates, got {}",
                2 * genus,
                coords.len()
            )));
        }
        for x in &coords {
            check_genus(genus, x.genus())?;
        }
        Ok(Chain { genus, coords })
    }

    /// The lift of a based loop starting at the preferred basepoint lift:
    /// its coordinates are the abelianized Fox derivatives.
    pub fn lift(w: &FreeWord) -> Self {
        Chain { genus: w.genus(), coords: w.fox_gradient() }
    }

    /// The lift of the boundary word `[A1,B1]⋯[Ag,Bg]`; always a curve.
    pub fn boundary_lift(genus: usize) -> Result<Self> {
        Ok(Self::lift(&FreeWord::boundary_word(genus)?))
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn coords(&self) -> &[GroupRingElem] {
        &self.coords
    }

    pub fn coord(&self, idx: usize) -> &GroupRingElem {
        &self.coords[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(GroupRingElem::is_zero)
    }

    /// `∂c = Σ c_{α_i}(a_i − 1) + Σ c_{β_i}(b_i − 1)`.
    pub fn boundary(&self) -> GroupRingElem {
        let mut out = GroupRingElem::zero(self.genus);
        for (idx, x) in self.coords.iter().enumerate() {
            if !x.is_zero() {
                out += &(x * &GroupRingElem::generator_minus_one(self.genus, idx));
            }
        }
        out
    }

    pub fn is_curve(&self) -> bool {
        self.boundary().is_zero()
    }

    /// The deck transformation by `h`.
    pub fn translate(&self, h: &ExponentVector) -> Self {
        Chain { genus: self.genus, coords: self.coords.iter().map(|x| x.shift(h)).collect() }
    }

    /// Left multiplication by a ring element.
    pub fn scale(&self, r: &GroupRingElem) -> Self {
        Chain { genus: self.genus, coords: self.coords.iter().map(|x| r * x).collect() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_genus(self.genus, other.genus)?;
        Ok(Chain {
            genus: self.genus,
            coords: self.coords.iter().zip(&other.coords).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_genus(self.genus, other.genus)?;
        Ok(Chain {
            genus: self.genus,
            coords: self.coords.iter().zip(&other.coords).map(|(x, y)| x - y).collect(),
        })
    }

    /// π⁎: the class in H of the projected chain, as integer coordinates in
    /// the basis `a1..ag, b1..bg`.
    pub fn project(&self) -> Vec<BigInt> {
        self.coords.iter().map(GroupRingElem::augmentation).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "genus": self.genus,
            "coords": self.coords.iter().map(GroupRingElem::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let genus = value
            .get("genus")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("chain is missing \"genus\"".into()))? as usize;
        let coords = value
            .get("coords")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("chain is missing \"coords\"".into()))?;
        let coords = coords
            .iter()
            .map(|v| GroupRingElem::from_json(v, genus))
            .collect::<Result<Vec<_>>>()?;
        Self::from_coords(genus, coords)
    }
}

/// The symplectic intersection form on H = ℤ^{2g}: `(a_i, b_j) = δ_ij`,
/// `(a_i, a_j) = (b_i, b_j) = 0`.
pub fn symplectic_form(x: &[BigInt], y: &[BigInt]) -> BigInt {
    assert_eq!(x.len(), y.len());
    let g = x.len() / 2;
    let mut out = BigInt::zero();
    for i in 0..g {
        out += &x[i] * &y[g + i];
        out -= &x[g + i] * &y[i];
    }
    out
}

impl fmt::Display for Chain {
    /// `alpha1: 1 - b1 ; beta1: a1 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, x) in self.coords.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ; ")?;
            }
            write!(f, "{}: {}", basis_name(self.genus, idx), x)?;
        }
        Ok(())
    }
}

impl Add<&Chain> for &Chain {
    type Output = Chain;
    fn add(self, rhs: &Chain) -> Chain {
        self.try_add(rhs).expect("chain addition across genera")
    }
}

impl Sub<&Chain> for &Chain {
    type Output = Chain;
    fn sub(self, rhs: &Chain) -> Chain {
        self.try_sub(rhs).expect("chain subtraction across genera")
    }
}

impl Neg for &Chain {
    type Output = Chain;
    fn neg(self) -> Chain {
        Chain { genus: self.genus, coords: self.coords.iter().map(|x| -x).collect() }
    }
}
