//! Seeded random streams.
//!
//! Every randomized routine takes a `u64` seed. Sub-streams are derived with
//! ChaCha stream ids so that trial `i` gets the same draws regardless of how
//! many trials run or in which order they are evaluated.

use alloc::vec::Vec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Generator used everywhere in the crate.
pub type Rng = ChaCha8Rng;

/// Generator for `seed`.
pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent generator for sub-stream `stream` of `seed`.
pub fn substream(seed: u64, stream: u64) -> Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream.wrapping_add(1));
    r
}

/// One standard normal draw.
pub fn normal(rng: &mut Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Vector of `n` standard normal draws.
pub fn normal_vec(rng: &mut Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| normal(rng)).collect()
}

/// Uniform point on the unit sphere in `R^n`.
pub fn unit_vec(rng: &mut Rng, n: usize) -> Vec<f64> {
    loop {
        let v = normal_vec(rng, n);
        let nrm = crate::linalg::norm(&v);
        if nrm > 1e-12 {
            return v.into_iter().map(|x| x / nrm).collect();
        }
    }
}

/// Uniform draw in `[0, 1)`.
pub fn uniform(rng: &mut Rng) -> f64 {
    use rand::Rng as _;
    rng.random::<f64>()
}

/// Uniform index in `0..n`.
pub fn index(rng: &mut Rng, n: usize) -> usize {
    use rand::Rng as _;
    rng.random_range(0..n)
}

/// Uniform random subset of `0..n` of size `k`, sorted.
pub fn subset(rng: &mut Rng, n: usize, k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..k.min(n) {
        let j = i + index(rng, n - i);
        idx.swap(i, j);
    }
    let mut out: Vec<usize> = idx[..k.min(n)].to_vec();
    out.sort_unstable();
    out
}

/// One draw from the exponential distribution with rate one.
pub fn exponential(rng: &mut Rng) -> f64 {
    rand_distr::Exp1.sample(rng)
}
