//! Seeded randomness used by sampled checks and family draws.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::linalg::Vector;
use crate::exactalg::Rational;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer vector with entries in `[-r, r]`.
pub fn int_vec(rng: &mut SeededRng, d: usize, r: i64) -> Vector {
    (0..d).map(|_| Rational::int(rng.gen_range(-r..=r))).collect()
}

/// Integer vector with at most `support` nonzero coordinates, each in `[-r, r] \ {0}`.
pub fn sparse_int_vec(rng: &mut SeededRng, d: usize, support: usize, r: i64) -> Vector {
    let mut v = vec![Rational::ZERO; d];
    for _ in 0..support.min(d) {
        let k = rng.gen_range(1..=r) * if rng.gen_bool(0.5) { 1 } else { -1 };
        v[rng.gen_range(0..d)] = Rational::int(k);
    }
    v
}

/// Rational vector with numerators in `[-r, r]` and denominators in `[1, 4]`.
pub fn rational_vec(rng: &mut SeededRng, d: usize, r: i64) -> Vector {
    (0..d).map(|_| Rational::new(rng.gen_range(-r..=r), rng.gen_range(1..=4))).collect()
}
