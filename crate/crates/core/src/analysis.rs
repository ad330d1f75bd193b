//! Traces of twist products, kernel criteria for commutators, and the
//! commute-or-free classification of pairs of multitwists.
//!
//! Every closed formula here is checked against the corresponding matrix
//! computation before it is returned; a disagreement is reported as
//! [`Error::Inconsistency`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::chains::Chain;
use crate::error::{check_genus, Error, Result};
use crate::freegroup::FreeWord;
use crate::groupring::GroupRingElem;
use crate::magnusrep::{multitwist_power_matrix, twist_matrix, MultiTwist, RepMatrix};
use crate::pairing::PairingTable;

fn curve_lifts(table: &PairingTable, twists: &[(FreeWord, i64)]) -> Result<Vec<Chain>> {
    let mut lifts = Vec::with_capacity(twists.len());
    for (w, _) in twists {
        check_genus(table.genus(), w.genus())?;
        if !w.is_nullhomologous() {
            return Err(Error::precondition(format!("word {w} is not null-homologous")));
        }
        let c = Chain::lift(w);
        let s = table.pair_curve(&c, &c)?;
        if !s.is_zero() {
            return Err(Error::precondition(format!(
                "word {w} has self-pairing {s}; the trace formula needs 0"
            )));
        }
        lifts.push(c);
    }
    Ok(lifts)
}

/// `t(T_{γ₁}^{n₁}⋯T_{γ_k}^{n_k})` in closed form: the sum over
/// subsequences `i₁<…<i_m`, `m ≥ 2`, of
/// `n_{i₁}⋯n_{i_m}·⟨c_{i₁},c_{i_m}⟩⟨c_{i_m},c_{i_{m−1}}⟩⋯⟨c_{i₂},c_{i₁}⟩`.
///
/// Evaluated by dynamic programming over the last index of a subsequence,
/// in `O(k³)` ring operations.
pub fn trace_product_formula(table: &PairingTable, twists: &[(FreeWord, i64)]) -> Result<GroupRingElem> {
    let g = table.genus();
    let lifts = curve_lifts(table, twists)?;
    let k = lifts.len();
    let mut p = vec![vec![GroupRingElem::zero(g); k]; k];
    for a in 0..k {
        for b in 0..k {
            if a != b {
                p[a][b] = table.pair_curve(&lifts[a], &lifts[b])?;
            }
        }
    }
    let n: Vec<BigInt> = twists.iter().map(|(_, n)| BigInt::from(*n)).collect();
    let mut total = GroupRingElem::zero(g);
    for first in 0..k {
        // f[j]: sum over increasing chains first < … < j of the products of
        // n_{next}·⟨c_next, c_prev⟩ along the chain.
        let mut f = vec![GroupRingElem::zero(g); k];
        for j in first + 1..k {
            let mut acc = p[j][first].clone();
            for q in first + 1..j {
                if !f[q].is_zero() && !p[j][q].is_zero() {
                    acc += &(&f[q] * &p[j][q]);
                }
            }
            f[j] = acc.scale(&n[j]);
            if !f[j].is_zero() && !p[first][j].is_zero() {
                total += &(&f[j] * &p[first][j]).scale(&n[first]);
            }
        }
    }
    Ok(total)
}

/// The matrix of `[T₁, T₂] = T₁T₂T₁⁻¹T₂⁻¹`.
pub fn commutator_matrix(table: &PairingTable, w1: &FreeWord, w2: &FreeWord) -> Result<RepMatrix> {
    let t1 = twist_matrix(table, w1, 1)?;
    let t2 = twist_matrix(table, w2, 1)?;
    let t1i = twist_matrix(table, w1, -1)?;
    let t2i = twist_matrix(table, w2, -1)?;
    t1.compose(&t2)?.compose(&t1i)?.compose(&t2i)
}

/// `t([T₁, T₂]) = ⟨c₁,c₂⟩²⟨c₂,c₁⟩²`, cross-checked against
/// [`trace_product_formula`] on the four-factor sequence.
pub fn commutator_trace(table: &PairingTable, w1: &FreeWord, w2: &FreeWord) -> Result<GroupRingElem> {
    let seq = [(w1.clone(), 1), (w2.clone(), 1), (w1.clone(), -1), (w2.clone(), -1)];
    let lifts = curve_lifts(table, &seq[..2])?;
    let x = table.pair_curve(&lifts[0], &lifts[1])?;
    let y = table.pair_curve(&lifts[1], &lifts[0])?;
    let closed = &(&x * &x) * &(&y * &y);
    let general = trace_product_formula(table, &seq)?;
    if closed != general {
        return Err(Error::Inconsistency(format!(
            "commutator trace {closed} disagrees with the subsequence formula {general}"
        )));
    }
    Ok(closed)
}

/// `[T₁, T₂] ∈ ker r ⟺ ⟨c₁, c₂⟩ = 0`, with both sides evaluated
/// independently (pairing versus identity test on the commutator matrix).
pub fn commutator_in_kernel(table: &PairingTable, w1: &FreeWord, w2: &FreeWord) -> Result<bool> {
    let lifts = curve_lifts(table, &[(w1.clone(), 1), (w2.clone(), 1)])?;
    let by_pairing = table.pair_curve(&lifts[0], &lifts[1])?.is_zero();
    let by_matrix = commutator_matrix(table, w1, w2)?.is_identity();
    if by_pairing != by_matrix {
        return Err(Error::Inconsistency(format!(
            "pairing says in-kernel = {by_pairing}, commutator matrix says {by_matrix}"
        )));
    }
    Ok(by_pairing)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VerdictKind {
    CommuteInImage,
    FreeInImage,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::CommuteInImage => "commute_in_image",
            VerdictKind::FreeInImage => "free_in_image",
        }
    }
}

/// A nonzero cross pairing `⟨cᵢ, dⱼ⟩` (0-based factor indices).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    pub pairing: GroupRingElem,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairVerdict {
    pub kind: VerdictKind,
    pub witness: Option<Witness>,
    pub trace_identity_checked: bool,
    /// `t([T_C, T_D])`, computed from matrices.
    pub commutator_trace: GroupRingElem,
}

impl PairVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.as_str(),
            "witness": self.witness.as_ref().map(|w| json!({
                "i": w.i + 1,
                "j": w.j + 1,
                "pairing": w.pairing.to_json(),
            })),
            "trace_identity_checked": self.trace_identity_checked,
        })
    }
}

impl fmt::Display for PairVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", self.kind.as_str())?;
        match &self.witness {
            Some(w) => writeln!(f, "witness: <c{}, d{}> = {}", w.i + 1, w.j + 1, w.pairing)?,
            None => writeln!(f, "witness: none")?,
        }
        write!(f, "trace-identity-checked: {}", self.trace_identity_checked)
    }
}

/// All cross pairings `⟨cᵢ, dⱼ⟩`.
pub fn cross_pairings(table: &PairingTable, c: &MultiTwist, d: &MultiTwist) -> Result<Vec<Vec<GroupRingElem>>> {
    c.lifts()
        .iter()
        .map(|ci| d.lifts().iter().map(|dj| table.pair_curve(ci, dj)).collect())
        .collect()
}

/// The matrix of `[T_C, T_D]`.
pub fn multitwist_commutator_matrix(table: &PairingTable, c: &MultiTwist, d: &MultiTwist) -> Result<RepMatrix> {
    let mc = multitwist_power_matrix(table, c, 1)?;
    let md = multitwist_power_matrix(table, d, 1)?;
    let mci = multitwist_power_matrix(table, c, -1)?;
    let mdi = multitwist_power_matrix(table, d, -1)?;
    mc.compose(&md)?.compose(&mci)?.compose(&mdi)
}

/// The terms `nᵢnᵢ′·‖Σⱼ mⱼ⟨cᵢ,dⱼ⟩⟨dⱼ,cᵢ′⟩‖` whose sum is `t([T_C, T_D])`,
/// listed for `i, i′` in row-major order.
pub fn commutator_trace_terms(table: &PairingTable, c: &MultiTwist, d: &MultiTwist) -> Result<Vec<GroupRingElem>> {
    c.require_certified()?;
    d.require_certified()?;
    let g = table.genus();
    let cross = cross_pairings(table, c, d)?;
    let back: Vec<Vec<GroupRingElem>> = d
        .lifts()
        .iter()
        .map(|dj| c.lifts().iter().map(|ci| table.pair_curve(dj, ci)).collect())
        .collect::<Result<_>>()?;
    let mut terms = Vec::new();
    for (i, (_, ni)) in c.factors().iter().enumerate() {
        for (i2, (_, ni2)) in c.factors().iter().enumerate() {
            let mut x = GroupRingElem::zero(g);
            for (j, (_, mj)) in d.factors().iter().enumerate() {
                x += &(&cross[i][j] * &back[j][i2]).scale(&BigInt::from(*mj));
            }
            terms.push(x.pseudosquare().scale(&BigInt::from(ni * ni2)));
        }
    }
    Ok(terms)
}

/// Decides whether `r(T_C)` and `r(T_D)` commute; otherwise they generate a
/// free group. Also checks that the matrix value of `t([T_C, T_D])` equals
/// its pseudosquare decomposition, and that it vanishes exactly in the
/// commuting case.
pub fn classify_multitwist_pair(table: &PairingTable, c: &MultiTwist, d: &MultiTwist) -> Result<PairVerdict> {
    check_genus(table.genus(), c.genus())?;
    check_genus(table.genus(), d.genus())?;
    c.require_certified()?;
    d.require_certified()?;
    let cross = cross_pairings(table, c, d)?;
    let witness = cross.iter().enumerate().find_map(|(i, row)| {
        row.iter()
            .enumerate()
            .find(|(_, x)| !x.is_zero())
            .map(|(j, x)| Witness { i, j, pairing: x.clone() })
    });
    let kind = if witness.is_some() { VerdictKind::FreeInImage } else { VerdictKind::CommuteInImage };

    let by_matrix = multitwist_commutator_matrix(table, c, d)?.t_value();
    let mut by_terms = GroupRingElem::zero(table.genus());
    for t in commutator_trace_terms(table, c, d)? {
        by_terms += &t;
    }
    if by_matrix != by_terms {
        return Err(Error::Inconsistency(format!(
            "t([T_C,T_D]) = {by_matrix} from matrices but {by_terms} from pseudosquares"
        )));
    }
    let vanishes = by_matrix.is_zero();
    let positive = by_matrix.const_term().is_positive();
    let consistent = match kind {
        VerdictKind::CommuteInImage => vanishes,
        VerdictKind::FreeInImage => positive,
    };
    if !consistent {
        return Err(Error::Inconsistency(format!(
            "verdict {} but t([T_C,T_D]) = {by_matrix}",
            kind.as_str()
        )));
    }
    Ok(PairVerdict { kind, witness, trace_identity_checked: true, commutator_trace: by_matrix })
}

/// Result of the bounded search for relations between `r(T_C)` and `r(T_D)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NoRelationReport {
    pub max_length: usize,
    /// Number of reduced words of each length `1..=max_length` checked.
    pub words_per_length: Vec<usize>,
    pub a_squared_zero: bool,
    pub b_squared_zero: bool,
    /// `tr(AB)` with `A = r(T_C) − I`, `B = r(T_D) − I`.
    pub trace_ab: GroupRingElem,
    /// `tr(AB) = t(T_C T_D) = Σ nᵢmⱼ⟨cᵢ,dⱼ⟩⟨dⱼ,cᵢ⟩` held.
    pub trace_ab_matches: bool,
    /// A word whose matrix is the identity, if one was found.
    pub relation: Option<String>,
}

impl NoRelationReport {
    pub fn words_checked(&self) -> usize {
        self.words_per_length.iter().sum()
    }

    /// True when every check passed and no relation was found.
    pub fn passed(&self) -> bool {
        self.a_squared_zero
            && self.b_squared_zero
            && self.trace_ab_matches
            && self.trace_ab.augmentation().is_zero()
            && self.relation.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "max_length": self.max_length,
            "words_checked": self.words_checked(),
            "words_per_length": self.words_per_length,
            "a_squared_zero": self.a_squared_zero,
            "b_squared_zero": self.b_squared_zero,
            "trace_ab": self.trace_ab.to_json(),
            "trace_ab_augmentation": self.trace_ab.augmentation().to_string(),
            "trace_ab_matches": self.trace_ab_matches,
            "relation": self.relation,
        })
    }
}

impl fmt::Display for NoRelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "words-checked: {} (max length {})", self.words_checked(), self.max_length)?;
        let per: Vec<String> = self.words_per_length.iter().map(ToString::to_string).collect();
        writeln!(f, "per-length: {}", per.join(" "))?;
        writeln!(f, "A^2 = 0: {}", self.a_squared_zero)?;
        writeln!(f, "B^2 = 0: {}", self.b_squared_zero)?;
        writeln!(f, "tr(AB): {}", self.trace_ab)?;
        writeln!(f, "tr(AB) identity: {}", self.trace_ab_matches)?;
        match &self.relation {
            Some(w) => write!(f, "relation: {w}"),
            None => write!(f, "relation: none"),
        }
    }
}

const LETTER_NAMES: [&str; 4] = ["C", "C^-1", "D", "D^-1"];

fn inverse_letter(l: usize) -> usize {
    l ^ 1
}

/// Enumerates every nontrivial reduced word of length at most `max_length`
/// in `T_C^{±1}, T_D^{±1}` and checks that none maps to the identity. Also
/// checks `A² = B² = 0` and the identity `tr(AB) = t(T_C T_D)`.
///
/// Requires a pair classified as `free_in_image`.
pub fn verify_no_relation(
    table: &PairingTable,
    c: &MultiTwist,
    d: &MultiTwist,
    max_length: usize,
) -> Result<NoRelationReport> {
    let verdict = classify_multitwist_pair(table, c, d)?;
    if verdict.kind != VerdictKind::FreeInImage {
        return Err(Error::precondition("the multitwists commute in the image; there is nothing to search"));
    }
    let g = table.genus();
    let id = RepMatrix::identity(g);
    let mc = multitwist_power_matrix(table, c, 1)?;
    let md = multitwist_power_matrix(table, d, 1)?;
    let a = mc.try_sub(&id)?;
    let b = md.try_sub(&id)?;
    let a_squared_zero = a.mul_raw(&a)?.is_zero();
    let b_squared_zero = b.mul_raw(&b)?.is_zero();
    let trace_ab = a.mul_raw(&b)?.trace();
    let t_cd = mc.compose(&md)?.t_value();
    let cross = cross_pairings(table, c, d)?;
    let mut formula = GroupRingElem::zero(g);
    for (i, (_, ni)) in c.factors().iter().enumerate() {
        for (j, (_, mj)) in d.factors().iter().enumerate() {
            let back = table.pair_curve(&d.lifts()[j], &c.lifts()[i])?;
            formula += &(&cross[i][j] * &back).scale(&BigInt::from(ni * mj));
        }
    }
    let trace_ab_matches = trace_ab == t_cd && trace_ab == formula;

    let letters = [
        mc,
        multitwist_power_matrix(table, c, -1)?,
        md,
        multitwist_power_matrix(table, d, -1)?,
    ];
    let mut words_per_length = vec![0usize; max_length];
    let mut relation = None;
    // Depth-first over reduced words, reusing prefix products.
    let mut stack: Vec<(Vec<usize>, RepMatrix)> = Vec::new();
    if max_length > 0 {
        for l in (0..4).rev() {
            stack.push((vec![l], letters[l].clone()));
        }
    }
    while let Some((word, m)) = stack.pop() {
        words_per_length[word.len() - 1] += 1;
        if m.is_identity() {
            relation = Some(word.iter().map(|&l| LETTER_NAMES[l]).collect::<Vec<_>>().join(" "));
            break;
        }
        if word.len() < max_length {
            let last = *word.last().expect("nonempty");
            for l in (0..4).rev() {
                if l == inverse_letter(last) {
                    continue;
                }
                let mut next = word.clone();
                next.push(l);
                stack.push((next, m.compose(&letters[l])?));
            }
        }
    }
    Ok(NoRelationReport {
        max_length,
        words_per_length,
        a_squared_zero,
        b_squared_zero,
        trace_ab,
        trace_ab_matches,
        relation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, g: usize) -> FreeWord {
        FreeWord::parse(s, g).unwrap()
    }

    #[test]
    fn single_twist_has_zero_trace() {
        let t = PairingTable::derive(2).unwrap();
        assert!(trace_product_formula(&t, &[(w("[A1,B1]", 2), 3)]).unwrap().is_zero());
        assert!(trace_product_formula(&t, &[]).unwrap().is_zero());
    }

    #[test]
    fn disjoint_pair() {
        let t = PairingTable::derive(2).unwrap();
        let d1 = w("[A1,B1]", 2);
        let d2 = w("[A1,B1][A2,B2]", 2);
        assert!(commutator_trace(&t, &d1, &d2).unwrap().is_zero());
        assert!(commutator_in_kernel(&t, &d1, &d2).unwrap());
        assert!(commutator_in_kernel(&t, &d1, &d1).unwrap());
    }

    #[test]
    fn rejects_bad_words() {
        let t = PairingTable::derive(1).unwrap();
        assert!(matches!(
            trace_product_formula(&t, &[(w("A1", 1), 1)]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn commuting_multitwists() {
        let t = PairingTable::derive(2).unwrap();
        let c = MultiTwist::new(&t, vec![(w("[A1,B1]", 2), 1)]).unwrap();
        let d = MultiTwist::new(&t, vec![(w("[A2,B2]", 2), 2)]).unwrap();
        let v = classify_multitwist_pair(&t, &c, &d).unwrap();
        assert_eq!(v.kind, VerdictKind::CommuteInImage);
        assert!(v.witness.is_none());
        assert!(v.trace_identity_checked);
        assert_eq!(classify_multitwist_pair(&t, &c, &c).unwrap().kind, VerdictKind::CommuteInImage);
        assert!(matches!(verify_no_relation(&t, &c, &d, 2), Err(Error::Precondition(_))));
        assert_eq!(v.to_json()["witness"], Value::Null);
    }
}
