//! Reproducible random rationals.
//!
//! Each trial gets its own ChaCha stream derived from `(seed, trial)`, so a
//! trial can be replayed alone and trials can be spread over threads without
//! changing what any of them draws.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{ratio, Rational};

/// Generator for trial `trial` under `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform over `{p/q : 1 <= q <= max_den, |p/q| <= bound}`, drawn by
/// picking `q` first.
pub fn rational_in<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    let q = rng.gen_range(1..=max_den.max(1));
    let p = rng.gen_range(-bound * q..=bound * q);
    ratio(p, q)
}

/// Like [`rational_in`] restricted to `(0, bound]`.
pub fn positive_rational_in<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    let q = rng.gen_range(1..=max_den.max(1));
    let p = rng.gen_range(1..=(bound * q).max(1));
    ratio(p, q)
}

/// A point with a shared denominator: `(numerators, denominator)`, every
/// coordinate in `[-bound, bound]`.
pub fn scaled_point<R: Rng>(rng: &mut R, dim: usize, bound: i64, max_den: i64) -> (Vec<i64>, i64) {
    let d = rng.gen_range(1..=max_den.max(1));
    let nums = (0..dim).map(|_| rng.gen_range(-bound * d..=bound * d)).collect();
    (nums, d)
}
