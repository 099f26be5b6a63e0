#![allow(dead_code)]

use memfft::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn signal(n: usize, seed: u64) -> Vec<Complex<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()
}

pub fn energy(x: &[Complex<f64>]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum()
}

pub fn pow2_range(lo_bits: u32, hi_bits: u32) -> impl Iterator<Item = usize> {
    (lo_bits..=hi_bits).map(|b| 1usize << b)
}
