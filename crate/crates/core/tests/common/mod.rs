#![allow(dead_code)]

use std::sync::OnceLock;

use magnus_core::{Chain, ExponentVector, FreeWord, GroupRingElem, MultiTwist, PairingTable};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn table(genus: usize) -> &'static PairingTable {
    static TABLES: [OnceLock<PairingTable>; 5] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    TABLES[genus].get_or_init(|| PairingTable::derive(genus).expect("table derivation"))
}

pub fn word(src: &str, genus: usize) -> FreeWord {
    FreeWord::parse(src, genus).unwrap_or_else(|e| panic!("{src}: {e}"))
}

pub fn elem(src: &str, genus: usize) -> GroupRingElem {
    GroupRingElem::parse(src, genus).unwrap_or_else(|e| panic!("{src}: {e}"))
}

/// A ring element with at most `max_terms` monomials, exponents in
/// `[-max_exp, max_exp]`, coefficients in `[-max_coeff, max_coeff]`.
pub fn random_elem(rng: &mut TestRng, genus: usize, max_terms: usize, max_exp: i32, max_coeff: i64) -> GroupRingElem {
    let terms = rng.gen_range(0..=max_terms);
    let mut out = GroupRingElem::zero(genus);
    for _ in 0..terms {
        let exps: Vec<i32> = (0..2 * genus).map(|_| rng.gen_range(-max_exp..=max_exp)).collect();
        let c = rng.gen_range(-max_coeff..=max_coeff);
        out += &GroupRingElem::monomial(ExponentVector::from_slice(&exps).unwrap(), c);
    }
    out
}

pub fn random_monomial(rng: &mut TestRng, genus: usize, max_exp: i32) -> GroupRingElem {
    let exps: Vec<i32> = (0..2 * genus).map(|_| rng.gen_range(-max_exp..=max_exp)).collect();
    GroupRingElem::monomial(ExponentVector::from_slice(&exps).unwrap(), 1)
}

/// A chain whose coordinates each have at most 3 monomials, exponents in
/// `[-2, 2]` and coefficients in `[-3, 3]`.
pub fn random_chain(rng: &mut TestRng, genus: usize) -> Chain {
    let coords = (0..2 * genus).map(|_| random_elem(rng, genus, 3, 2, 3)).collect();
    Chain::from_coords(genus, coords).unwrap()
}

pub fn random_nonzero_chain(rng: &mut TestRng, genus: usize) -> Chain {
    loop {
        let c = random_chain(rng, genus);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn random_word(rng: &mut TestRng, genus: usize, max_len: usize) -> FreeWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len).map(|_| magnus_core::freegroup::Letter::new(rng.gen_range(0..2 * genus), rng.gen()));
    FreeWord::reduce(genus, letters).unwrap()
}

/// Null-homologous genus-2 words with vanishing self-pairing: the standard
/// separating words, words crossing them, and conjugates (whose lifts are
/// translates).
pub fn separating_pool_g2() -> Vec<FreeWord> {
    [
        "[A1,B1]",
        "[A2,B2]",
        "[A1,B1][A2,B2]",
        "[A1 A2,B2]",
        "[A1,B2 B1]",
        "[A1,A2^-1 B1]",
        "B1 [A2,B2] B1^-1",
        "A2 [A1,B1] A2^-1",
        "B2^-1 [A1 A2,B2] B2",
    ]
    .iter()
    .map(|s| word(s, 2))
    .collect()
}

/// Words in the pool that cross `[A1,B1]` (nonzero pairing).
pub const CROSSING_G2: [&str; 3] = ["[A1 A2,B2]", "[A1,B2 B1]", "[A1,A2^-1 B1]"];

pub fn pairing_of(genus: usize, u: &FreeWord, v: &FreeWord) -> GroupRingElem {
    table(genus).pair_curve(&Chain::lift(u), &Chain::lift(v)).unwrap()
}

/// A random certified multitwist from the pool: a random subset whose
/// members pairwise pair to zero, with multiplicities in `1..=3`.
pub fn random_multitwist(rng: &mut TestRng, pool: &[FreeWord]) -> MultiTwist {
    let t = table(2);
    loop {
        let mut idx: Vec<usize> = (0..pool.len()).collect();
        idx.shuffle(rng);
        let k = rng.gen_range(1..=3);
        let mut chosen: Vec<&FreeWord> = Vec::new();
        for &i in &idx {
            if chosen.len() == k {
                break;
            }
            let w = &pool[i];
            if chosen.iter().all(|u| pairing_of(2, u, w).is_zero()) {
                chosen.push(w);
            }
        }
        let factors = chosen.into_iter().map(|w| (w.clone(), rng.gen_range(1..=3u64))).collect();
        if let Ok(m) = MultiTwist::new(t, factors) {
            return m;
        }
    }
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}
