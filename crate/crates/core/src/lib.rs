//! Exact computations with the Magnus representation of the Torelli group
//! `r: I_{g,1} → GL_{2g}(ℤ[H])`.
//!
//! * [`groupring`]: Laurent polynomials in `a1..ag, b1..bg` (the ring ℤ[H]).
//! * [`freegroup`]: words in `A1..Ag, B1..Bg`, endomorphisms, Fox calculus.
//! * [`chains`]: the module H₁(Ŝ, π⁻¹(*)) ≅ ℤ[H]^{2g} and lifts of words.
//! * [`covermodel`]: a combinatorial model of the universal abelian cover,
//!   used as an independent oracle for intersection numbers.
//! * [`pairing`]: the two higher intersection forms ⟨·,·⟩±.
//! * [`magnusrep`]: twist and multitwist matrices, composition, traces.
//! * [`analysis`]: trace formulas, kernel criteria and the commute-or-free
//!   classification of pairs of multitwists.
//! * [`expr`]: the text grammar for words and twist expressions.
//!
//! Basis and generator indices are 0-based in the API (`0..g` for the `a`
//! side, `g..2g` for the `b` side) and 1-based in text.

pub mod analysis;
pub mod chains;
pub mod covermodel;
pub mod error;
pub mod expr;
pub mod freegroup;
pub mod groupring;
pub mod magnusrep;
pub mod pairing;

pub use chains::Chain;
pub use error::{Error, Result};
pub use freegroup::{FreeEndo, FreeWord};
pub use groupring::{ExponentVector, GroupRingElem};
pub use magnusrep::{MultiTwist, RepMatrix};
pub use pairing::{PairingTable, Sign};
