//! Words in the free group Γ = π₁(S) on `A1..Ag, B1..Bg`, endomorphisms
//! given on generators, and Fox calculus pushed down to ℤ[H].
//!
//! ℤ[Γ] itself is never materialized: every Fox derivative is computed
//! directly in abelianized form.

use std::fmt;

use crate::error::{check_genus, check_valid_genus, Error, Result};
use crate::groupring::{ExponentVector, GroupRingElem};
use crate::magnusrep::RepMatrix;

/// A generator of Γ or its inverse. Generators are 0-based: `0..g` are
/// `A1..Ag`, `g..2g` are `B1..Bg`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// Name of generator `idx` of Γ, e.g. `A2` or `B1`.
pub fn generator_name(genus: usize, idx: usize) -> String {
    if idx < genus {
        format!("A{}", idx + 1)
    } else {
        format!("B{}", idx - genus + 1)
    }
}

/// A freely reduced word.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FreeWord {
    genus: usize,
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity(genus: usize) -> Self {
        FreeWord { genus, letters: Vec::new() }
    }

    pub fn generator(genus: usize, idx: usize) -> Result<Self> {
        Self::reduce(genus, [Letter::new(idx, false)])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce(genus: usize, raw: impl IntoIterator<Item = Letter>) -> Result<Self> {
        check_valid_genus(genus)?;
        let mut letters: Vec<Letter> = Vec::new();
        for l in raw {
            if l.generator >= 2 * genus {
                return Err(Error::IndexOutOfRange { index: l.generator, genus });
            }
            match letters.last() {
                Some(&last) if last.cancels(l) => {
                    letters.pop();
                }
                _ => letters.push(l),
            }
        }
        Ok(FreeWord { genus, letters })
    }

    /// The standard separating word `δ_k = [A1,B1]⋯[Ak,Bk]`, for `1 ≤ k ≤ g`.
    pub fn delta(k: usize, genus: usize) -> Result<Self> {
        check_valid_genus(genus)?;
        if k == 0 || k > genus {
            return Err(Error::IndexOutOfRange { index: k, genus });
        }
        let letters = (0..k).flat_map(|i| {
            let a = i;
            let b = genus + i;
            [
                Letter::new(a, false),
                Letter::new(b, false),
                Letter::new(a, true),
                Letter::new(b, true),
            ]
        });
        Self::reduce(genus, letters)
    }

    /// The word read around the boundary component, `δ_g`.
    pub fn boundary_word(genus: usize) -> Result<Self> {
        Self::delta(genus, genus)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        check_genus(self.genus, other.genus)?;
        Self::reduce(self.genus, self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            genus: self.genus,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// `u v u⁻¹ v⁻¹`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.concat(other)?.concat(&self.inverse())?.concat(&other.inverse())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity(self.genus);
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base).expect("same genus");
        }
        out
    }

    /// The signed letter count, i.e. the image of `w` in H.
    pub fn abelian_exponents(&self) -> ExponentVector {
        let mut exps = vec![0i32; 2 * self.genus];
        for l in &self.letters {
            exps[l.generator] += if l.inverse { -1 } else { 1 };
        }
        ExponentVector::from_slice(&exps).expect("even length")
    }

    /// The image of `w` in H, as a monomial of ℤ[H].
    pub fn abelianize(&self) -> GroupRingElem {
        GroupRingElem::monomial(self.abelian_exponents(), 1)
    }

    /// Whether the word is trivial in H, the algebraic shadow of being separating.
    pub fn is_nullhomologous(&self) -> bool {
        self.abelian_exponents().is_zero()
    }

    /// All abelianized Fox derivatives `∂w/∂z_j`, `j = 0..2g`, in one pass.
    ///
    /// Uses `∂(uv) = ∂u + ab(u)·∂v` with `∂z_j/∂z_j = 1` and
    /// `∂z_j⁻¹/∂z_j = -z_j⁻¹`.
    pub fn fox_gradient(&self) -> Vec<GroupRingElem> {
        let g = self.genus;
        let mut out = vec![GroupRingElem::zero(g); 2 * g];
        let mut prefix = ExponentVector::zero(g);
        for l in &self.letters {
            let step = ExponentVector::unit(g, l.generator);
            if l.inverse {
                prefix = prefix.sub(&step);
                out[l.generator] -= &GroupRingElem::monomial(prefix.clone(), 1);
            } else {
                out[l.generator] += &GroupRingElem::monomial(prefix.clone(), 1);
                prefix = prefix.add(&step);
            }
        }
        out
    }

    /// The abelianized Fox derivative `∂w/∂z_j` (0-based `j`).
    pub fn fox_derivative_ab(&self, j: usize) -> Result<GroupRingElem> {
        if j >= 2 * self.genus {
            return Err(Error::IndexOutOfRange { index: j, genus: self.genus });
        }
        Ok(self.fox_gradient().swap_remove(j))
    }

    /// Parses the shared word grammar; see [`crate::expr`].
    pub fn parse(src: &str, genus: usize) -> Result<Self> {
        crate::expr::parse_word_expr(src, genus)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&generator_name(self.genus, l.generator))?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// An endomorphism of Γ, given by the images of the 2g generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeEndo {
    genus: usize,
    images: Vec<FreeWord>,
}

impl FreeEndo {
    pub fn identity(genus: usize) -> Result<Self> {
        check_valid_genus(genus)?;
        let images = (0..2 * genus)
            .map(|i| FreeWord::generator(genus, i))
            .collect::<Result<_>>()?;
        Ok(FreeEndo { genus, images })
    }

    pub fn from_images(genus: usize, images: Vec<FreeWord>) -> Result<Self> {
        check_valid_genus(genus)?;
        if images.len() != 2 * genus {
            return Err(Error::precondition(format!(
                "an endomorphism of genus {genus} needs {} images, got {}",
                2 * genus,
                images.len()
            )));
        }
        for w in &images {
            check_genus(genus, w.genus)?;
        }
        Ok(FreeEndo { genus, images })
    }

    /// The π₁-action of `T^n` for the twist about `δ_k`: the generators of the
    /// first `k` handles are conjugated, `x ↦ δ_kⁿ x δ_k⁻ⁿ`, the rest are fixed.
    pub fn twist(k: usize, n: i64, genus: usize) -> Result<Self> {
        let delta = FreeWord::delta(k, genus)?.pow(n);
        let delta_inv = delta.inverse();
        let mut images = Vec::with_capacity(2 * genus);
        for idx in 0..2 * genus {
            let z = FreeWord::generator(genus, idx)?;
            let handle = idx % genus;
            if handle < k {
                images.push(delta.concat(&z)?.concat(&delta_inv)?);
            } else {
                images.push(z);
            }
        }
        Ok(FreeEndo { genus, images })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn apply(&self, w: &FreeWord) -> Result<FreeWord> {
        check_genus(self.genus, w.genus)?;
        let letters = w.letters.iter().flat_map(|l| {
            let img = &self.images[l.generator];
            let seq: Vec<Letter> = if l.inverse {
                img.letters.iter().rev().map(|x| x.inv()).collect()
            } else {
                img.letters.clone()
            };
            seq
        });
        FreeWord::reduce(self.genus, letters)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_genus(self.genus, other.genus)?;
        let images = other.images.iter().map(|w| self.apply(w)).collect::<Result<_>>()?;
        Ok(FreeEndo { genus: self.genus, images })
    }

    /// Whether every generator's image has the same class in H.
    pub fn is_torelli(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| w.abelian_exponents() == ExponentVector::unit(self.genus, i))
    }

    /// The Fox-calculus matrix with entry `(i, j) = ∂f(z_i)/∂z_j` in ℤ[H].
    ///
    /// Row `i` is the lift of `f(z_i)`, so rows are images of basis arcs.
    /// The projection to ℤ[H] is only multiplicative on Torelli
    /// endomorphisms, so anything else is rejected.
    pub fn magnus_matrix(&self) -> Result<RepMatrix> {
        if !self.is_torelli() {
            return Err(Error::precondition(
                "endomorphism acts nontrivially on H; its abelianized Fox matrix is not a representation",
            ));
        }
        let rows: Vec<Vec<GroupRingElem>> = self.images.iter().map(|w| w.fox_gradient()).collect();
        RepMatrix::from_rows(self.genus, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, g: usize) -> FreeWord {
        FreeWord::parse(s, g).unwrap()
    }

    fn e(s: &str, g: usize) -> GroupRingElem {
        GroupRingElem::parse(s, g).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let raw = [Letter::new(0, false), Letter::new(0, true)];
        assert!(FreeWord::reduce(2, raw).unwrap().is_empty());
        let raw = [
            Letter::new(0, false),
            Letter::new(2, false),
            Letter::new(2, true),
            Letter::new(1, false),
        ];
        assert_eq!(FreeWord::reduce(2, raw).unwrap(), w("A1 A2", 2));
        let x = w("A1 B2 A1^-1", 2);
        assert_eq!(FreeWord::reduce(2, x.letters().to_vec()).unwrap(), x);
        // cascading cancellation
        assert_eq!(w("A1 B1 B1^-1 A1^-1 A2", 2), w("A2", 2));
    }

    #[test]
    fn reduce_rejects_bad_generator() {
        let err = FreeWord::reduce(1, [Letter::new(2, false)]).unwrap_err();
        assert!(err.is_input_error());
    }

    #[test]
    fn word_operations() {
        let a1 = w("A1", 1);
        let b1 = w("B1", 1);
        assert_eq!(a1.commutator(&b1).unwrap(), w("A1 B1 A1^-1 B1^-1", 1));
        assert_eq!(w("A1 B2", 2).inverse(), w("B2^-1 A1^-1", 2));
        let x = w("A1 B2 A2^-1 B1", 2);
        assert!(x.concat(&x.inverse()).unwrap().is_empty());
        assert!(a1.concat(&w("A1", 2)).is_err());
        assert_eq!(w("A1 B1", 1).pow(-2), w("B1^-1 A1^-1 B1^-1 A1^-1", 1));
    }

    #[test]
    fn abelianization() {
        assert!(w("[A1,B1]", 1).abelianize().is_one());
        assert_eq!(w("A1 A1 B2^-1", 2).abelianize(), e("a1^2*b2^-1", 2));
        assert!(w("[A1,B1]", 2).is_nullhomologous());
        assert!(!w("A1", 2).is_nullhomologous());
        for k in 1..=3 {
            assert!(FreeWord::delta(k, 3).unwrap().is_nullhomologous());
        }
    }

    #[test]
    fn fox_derivative_examples() {
        let a1 = w("A1", 1);
        assert!(a1.fox_derivative_ab(0).unwrap().is_one());
        assert!(a1.fox_derivative_ab(1).unwrap().is_zero());
        let d = w("[A1,B1]", 1);
        assert_eq!(d.fox_derivative_ab(0).unwrap(), e("1 - b1", 1));
        assert_eq!(d.fox_derivative_ab(1).unwrap(), e("a1 - 1", 1));
        assert!(d.fox_derivative_ab(2).unwrap_err().is_input_error());
        assert_eq!(w("A1^-1", 1).fox_derivative_ab(0).unwrap(), e("-a1^-1", 1));
    }

    #[test]
    fn twist_endo_examples() {
        let id = FreeEndo::identity(2).unwrap();
        assert_eq!(FreeEndo::twist(1, 0, 2).unwrap(), id);
        let t = FreeEndo::twist(2, 1, 2).unwrap();
        let tinv = FreeEndo::twist(2, -1, 2).unwrap();
        assert_eq!(t.compose(&tinv).unwrap(), id);
        assert!(t.is_torelli());
        let t1 = FreeEndo::twist(1, 1, 2).unwrap();
        let a1 = w("A1", 2);
        let d1 = FreeWord::delta(1, 2).unwrap();
        let expected = d1.concat(&a1).unwrap().concat(&d1.inverse()).unwrap();
        assert_eq!(t1.apply(&a1).unwrap(), expected);
        assert_eq!(t1.apply(&w("A2 B2", 2)).unwrap(), w("A2 B2", 2));
        assert!(FreeEndo::twist(3, 1, 2).is_err());
        assert!(FreeEndo::twist(0, 1, 2).is_err());
    }

    #[test]
    fn twist_fixes_boundary_word() {
        for k in 1..=3 {
            let t = FreeEndo::twist(k, 2, 3).unwrap();
            let bd = FreeWord::boundary_word(3).unwrap();
            assert_eq!(t.apply(&bd).unwrap(), bd);
        }
    }

    #[test]
    fn identity_endo_matrix_is_identity() {
        let m = FreeEndo::identity(2).unwrap().magnus_matrix().unwrap();
        assert!(m.is_identity());
    }

    #[test]
    fn non_torelli_matrix_is_rejected() {
        // A1 -> A1 B1 acts nontrivially on homology.
        let f = FreeEndo::from_images(1, vec![w("A1 B1", 1), w("B1", 1)]).unwrap();
        assert!(!f.is_torelli());
        assert!(matches!(f.magnus_matrix(), Err(Error::Precondition(_))));
    }

    #[test]
    fn display() {
        assert_eq!(w("[A1,B2]", 2).to_string(), "A1 B2 A1^-1 B2^-1");
        assert_eq!(FreeWord::identity(2).to_string(), "1");
    }
}
