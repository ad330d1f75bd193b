//! Exact arithmetic in the integral group ring ℤ[H] of H ≅ ℤ^{2g}.
//!
//! Elements are Laurent polynomials in the commuting variables
//! `a1..ag, b1..bg` with arbitrary-precision integer coefficients, stored
//! sparsely in canonical form (no zero coefficients).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use smallvec::SmallVec;

use crate::error::{check_genus, Error, Result};

/// Name of the `idx`-th generator of H (0-based): `a1..ag` then `b1..bg`.
pub fn variable_name(genus: usize, idx: usize) -> String {
    if idx < genus {
        format!("a{}", idx + 1)
    } else {
        format!("b{}", idx - genus + 1)
    }
}

/// An element of H written additively: exponents of `a1..ag, b1..bg`.
///
/// The derived ordering is lexicographic, which is the canonical term order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExponentVector(SmallVec<[i32; 8]>);

impl ExponentVector {
    pub fn zero(genus: usize) -> Self {
        ExponentVector(SmallVec::from_elem(0, 2 * genus))
    }

    /// The generator `a_i` (for `idx < g`) or `b_{idx-g}`.
    pub fn unit(genus: usize, idx: usize) -> Self {
        let mut v = Self::zero(genus);
        v.0[idx] = 1;
        v
    }

    pub fn from_slice(exps: &[i32]) -> Result<Self> {
        if exps.is_empty() || exps.len() % 2 != 0 {
            return Err(Error::Json(format!(
                "exponent vector must have even positive length, got {}",
                exps.len()
            )));
        }
        Ok(ExponentVector(SmallVec::from_slice(exps)))
    }

    pub fn genus(&self) -> usize {
        self.0.len() / 2
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Largest absolute exponent (the L∞ norm of the lattice point).
    pub fn max_abs(&self) -> i32 {
        self.0.iter().map(|e| e.abs()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.0.len(), other.0.len());
        ExponentVector(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.0.len(), other.0.len());
        ExponentVector(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        ExponentVector(self.0.iter().map(|e| -e).collect())
    }

    pub fn scale(&self, n: i32) -> Self {
        ExponentVector(self.0.iter().map(|e| e * n).collect())
    }

    fn render(&self) -> String {
        let genus = self.genus();
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                let name = variable_name(genus, i);
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// An element of ℤ[H].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupRingElem {
    genus: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl GroupRingElem {
    pub fn zero(genus: usize) -> Self {
        GroupRingElem { genus, terms: BTreeMap::new() }
    }

    pub fn one(genus: usize) -> Self {
        Self::constant(genus, 1)
    }

    pub fn constant(genus: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(ExponentVector::zero(genus), c)
    }

    pub fn monomial(h: ExponentVector, c: impl Into<BigInt>) -> Self {
        let genus = h.genus();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(h, c);
        }
        GroupRingElem { genus, terms }
    }

    /// The group element `z_idx` (`a_i` or `b_i`) as a ring element.
    pub fn generator(genus: usize, idx: usize) -> Self {
        Self::monomial(ExponentVector::unit(genus, idx), 1)
    }

    /// `z_idx - 1`, the boundary of the basis arc over generator `idx`.
    pub fn generator_minus_one(genus: usize, idx: usize) -> Self {
        let mut x = Self::generator(genus, idx);
        x.add_term(ExponentVector::zero(genus), &BigInt::from(-1));
        x
    }

    /// Builds an element from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms<I, C>(genus: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, C)>,
        C: Into<BigInt>,
    {
        let mut x = Self::zero(genus);
        for (h, c) in terms {
            check_genus(genus, h.genus())?;
            x.add_term(h, &c.into());
        }
        Ok(x)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(h, c)| h.is_zero() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, h: &ExponentVector) -> BigInt {
        self.terms.get(h).cloned().unwrap_or_else(BigInt::zero)
    }

    /// `Some(h)` if this element is a single group element `h` with coefficient 1.
    pub fn as_group_element(&self) -> Option<&ExponentVector> {
        match self.terms.iter().next() {
            Some((h, c)) if self.terms.len() == 1 && c.is_one() => Some(h),
            _ => None,
        }
    }

    fn add_term(&mut self, h: ExponentVector, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(h) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_genus(self.genus, other.genus)?;
        let mut out = self.clone();
        for (h, c) in &other.terms {
            out.add_term(h.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_genus(self.genus, other.genus)?;
        let mut out = self.clone();
        for (h, c) in &other.terms {
            out.add_term(h.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_genus(self.genus, other.genus)?;
        let mut out = Self::zero(self.genus);
        for (h1, c1) in &self.terms {
            for (h2, c2) in &other.terms {
                out.add_term(h1.add(h2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// Multiplication by the group element `h`.
    pub fn shift(&self, h: &ExponentVector) -> Self {
        assert_eq!(self.genus, h.genus(), "genus mismatch in shift");
        GroupRingElem {
            genus: self.genus,
            terms: self.terms.iter().map(|(k, c)| (k.add(h), c.clone())).collect(),
        }
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        if n.is_zero() {
            return Self::zero(self.genus);
        }
        GroupRingElem {
            genus: self.genus,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * n)).collect(),
        }
    }

    /// The involution induced by `h ↦ h⁻¹`.
    pub fn involute(&self) -> Self {
        GroupRingElem {
            genus: self.genus,
            terms: self.terms.iter().map(|(h, c)| (h.neg(), c.clone())).collect(),
        }
    }

    /// The augmentation ε: every group element maps to 1.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Coefficient of the identity.
    pub fn const_term(&self) -> BigInt {
        self.coefficient(&ExponentVector::zero(self.genus))
    }

    /// `x · x̄`. Its constant term is the sum of squared coefficients of `x`.
    pub fn pseudosquare(&self) -> Self {
        self * &self.involute()
    }

    /// Whether `x` lies in the `n`-th power of the augmentation ideal.
    ///
    /// Substitutes `z_i = 1 + t_i` (negative powers become geometric series)
    /// and checks that every term of total t-degree below `n` cancels.
    pub fn aug_ideal_member(&self, n: usize) -> bool {
        if n == 0 {
            return true;
        }
        let vars = 2 * self.genus;
        let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (h, c) in &self.terms {
            let mut series: Vec<(Vec<u32>, BigInt)> = vec![(vec![0; vars], c.clone())];
            for (var, &e) in h.as_slice().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let binoms = binomial_series(e, n);
                let mut next = Vec::new();
                for (deg, coeff) in &series {
                    let used: u32 = deg.iter().sum();
                    for (k, b) in binoms.iter().enumerate() {
                        if used as usize + k >= n {
                            break;
                        }
                        if b.is_zero() {
                            continue;
                        }
                        let mut d = deg.clone();
                        d[var] += k as u32;
                        next.push((d, coeff * b));
                    }
                }
                series = next;
            }
            for (deg, coeff) in series {
                *acc.entry(deg).or_insert_with(BigInt::zero) += coeff;
            }
        }
        acc.values().all(Zero::is_zero)
    }

    /// Exact integer division of every coefficient, if possible.
    pub fn div_exact(&self, n: &BigInt) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (h, c) in &self.terms {
            let (q, r) = c.div_rem(n);
            if !r.is_zero() {
                return None;
            }
            terms.insert(h.clone(), q);
        }
        Some(GroupRingElem { genus: self.genus, terms })
    }

    /// JSON form: `[{"exps": [..], "coeff": c}, ...]` in canonical order.
    /// Coefficients that do not fit in an `i64` are written as decimal strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(h, c)| {
                    let coeff = match c.to_i64() {
                        Some(v) => json!(v),
                        None => json!(c.to_string()),
                    };
                    json!({ "exps": h.as_slice(), "coeff": coeff })
                })
                .collect(),
        )
    }

    pub fn from_json(value: &Value, genus: usize) -> Result<Self> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::Json("ring element must be an array of terms".into()))?;
        let mut out = Self::zero(genus);
        for term in arr {
            let exps = term
                .get("exps")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Json("term is missing \"exps\"".into()))?;
            let exps: Vec<i32> = exps
                .iter()
                .map(|e| {
                    e.as_i64()
                        .and_then(|v| i32::try_from(v).ok())
                        .ok_or_else(|| Error::Json(format!("bad exponent {e}")))
                })
                .collect::<Result<_>>()?;
            let h = ExponentVector::from_slice(&exps)?;
            check_genus(genus, h.genus())?;
            let coeff = match term.get("coeff") {
                Some(Value::Number(n)) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| Error::Json(format!("bad coefficient {n}")))?,
                Some(Value::String(s)) => s
                    .parse::<BigInt>()
                    .map_err(|_| Error::Json(format!("bad coefficient {s:?}")))?,
                _ => return Err(Error::Json("term is missing \"coeff\"".into())),
            };
            out.add_term(h, &coeff);
        }
        Ok(out)
    }

    /// Parses the text form, e.g. `a1*b1^-1 - 2` or `3*a2^2 + b1`.
    pub fn parse(src: &str, genus: usize) -> Result<Self> {
        TextParser { src: src.as_bytes(), pos: 0, genus }.parse_elem()
    }
}

/// Coefficients of `(1 + t)^e` up to `t^{n-1}`, for any integer `e`.
fn binomial_series(e: i32, n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n);
    let mut b = BigInt::one();
    for k in 0..n {
        out.push(b.clone());
        b = b * BigInt::from(e as i64 - k as i64) / BigInt::from(k as i64 + 1);
    }
    out
}

impl fmt::Display for GroupRingElem {
    /// Positive terms first, then negative ones, each group in lexicographic
    /// order of exponent vectors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let ordered = self
            .terms
            .iter()
            .filter(|(_, c)| c.is_positive())
            .chain(self.terms.iter().filter(|(_, c)| c.is_negative()));
        for (k, (h, c)) in ordered.enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            if h.is_zero() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{h}")?;
            } else {
                write!(f, "{mag}*{h}")?;
            }
        }
        Ok(())
    }
}

struct TextParser<'a> {
    src: &'a [u8],
    pos: usize,
    genus: usize,
}

impl TextParser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        text.parse::<BigInt>().or_else(|_| {
            self.pos = start;
            self.err("expected integer")
        })
    }

    fn parse_elem(mut self) -> Result<GroupRingElem> {
        let mut out = GroupRingElem::zero(self.genus);
        let mut sign = BigInt::one();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some(b'+') => self.pos += 1,
            None => return self.err("empty expression"),
            _ => {}
        }
        loop {
            let (h, c) = self.term()?;
            out.add_term(h, &(c * &sign));
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => sign = BigInt::one(),
                Some(b'-') => sign = -BigInt::one(),
                Some(_) => return self.err("expected '+' or '-'"),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(ExponentVector, BigInt)> {
        let mut coeff = BigInt::one();
        let mut h = ExponentVector::zero(self.genus);
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    coeff *= self.integer()?;
                }
                Some(b'a') | Some(b'b') => {
                    let (idx, e) = self.variable()?;
                    h.0[idx] += e;
                }
                _ => return self.err("expected coefficient or variable"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((h, coeff))
    }

    fn variable(&mut self) -> Result<(usize, i32)> {
        let letter = self.src[self.pos];
        self.pos += 1;
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let index: usize = std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(Error::Parse { position: start, message: "expected variable index".into() })?;
        if index == 0 || index > self.genus {
            return Err(Error::Parse {
                position: start,
                message: format!("variable index {index} outside 1..={}", self.genus),
            });
        }
        let idx = if letter == b'a' { index - 1 } else { self.genus + index - 1 };
        let mut e = 1;
        if self.src.get(self.pos) == Some(&b'^') {
            self.pos += 1;
            e = self
                .integer()?
                .to_i32()
                .ok_or(Error::Parse { position: self.pos, message: "exponent too large".into() })?;
        }
        Ok((idx, e))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&GroupRingElem> for &GroupRingElem {
            type Output = GroupRingElem;
            /// Panics if the genera differ; use the `try_` form for fallible input.
            fn $method(self, rhs: &GroupRingElem) -> GroupRingElem {
                self.$try(rhs).expect("ring operation on elements of different genus")
            }
        }
        impl $trait<GroupRingElem> for GroupRingElem {
            type Output = GroupRingElem;
            fn $method(self, rhs: GroupRingElem) -> GroupRingElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GroupRingElem> for GroupRingElem {
            type Output = GroupRingElem;
            fn $method(self, rhs: &GroupRingElem) -> GroupRingElem {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl AddAssign<&GroupRingElem> for GroupRingElem {
    fn add_assign(&mut self, rhs: &GroupRingElem) {
        assert_eq!(self.genus, rhs.genus, "ring operation on elements of different genus");
        for (h, c) in &rhs.terms {
            self.add_term(h.clone(), c);
        }
    }
}

impl SubAssign<&GroupRingElem> for GroupRingElem {
    fn sub_assign(&mut self, rhs: &GroupRingElem) {
        assert_eq!(self.genus, rhs.genus, "ring operation on elements of different genus");
        for (h, c) in &rhs.terms {
            self.add_term(h.clone(), &-c);
        }
    }
}

impl Neg for &GroupRingElem {
    type Output = GroupRingElem;
    fn neg(self) -> GroupRingElem {
        GroupRingElem {
            genus: self.genus,
            terms: self.terms.iter().map(|(h, c)| (h.clone(), -c)).collect(),
        }
    }
}

impl Neg for GroupRingElem {
    type Output = GroupRingElem;
    fn neg(self) -> GroupRingElem {
        -&self
    }
}
