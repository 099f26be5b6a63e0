//! Precomputed unit-circle lookup table for twiddle factors.
//!
//! Entry `j` of a table with resolution `R` holds `e^{-2πi·j/R}`. A factor
//! `W_N^e` with `N | R` is the entry `(e mod N)·R/N`, so lookups never
//! interpolate and the periodicity, conjugate-symmetry and reducibility
//! identities of the roots of unity hold exactly on table values.

use crate::error::{invalid, Result};
use crate::{is_pow2, Complex, FftFloat};
use std::f64::consts::PI;

/// Resolution used by [`TwiddleTable::default`]: the largest supported
/// transform length.
pub const DEFAULT_RESOLUTION: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct TwiddleTable<T = f64> {
    resolution: usize,
    entries: Vec<Complex<T>>,
}

impl<T: FftFloat> TwiddleTable<T> {
    /// Builds a table with `resolution` entries (a power of two, at least 2).
    ///
    /// Only the first octant is evaluated with `sin`/`cos`; the rest of the
    /// circle is filled by reflection so that `entry(R - j) == conj(entry(j))`
    /// holds on the stored values.
    pub fn new(resolution: usize) -> Result<Self> {
        if resolution < 2 || !is_pow2(resolution) {
            return Err(invalid(format!(
                "twiddle resolution must be a power of two >= 2, got {resolution}"
            )));
        }
        let r = resolution;
        let mut entries = vec![Complex::new(T::zero(), T::zero()); r];
        if r == 2 {
            entries[0] = Complex::new(T::one(), T::zero());
            entries[1] = Complex::new(-T::one(), T::zero());
            return Ok(TwiddleTable { resolution, entries });
        }

        // (cos, sin) of 2πj/R for j in [0, R/4]
        let quarter = r / 4;
        let eighth = r / 8;
        let mut first_quadrant = vec![(0.0f64, 0.0f64); quarter + 1];
        #[allow(clippy::needless_range_loop)]
        for j in 0..=eighth {
            let angle = 2.0 * PI * j as f64 / r as f64;
            first_quadrant[j] = (angle.cos(), angle.sin());
        }
        for j in eighth + 1..=quarter {
            let (c, s) = first_quadrant[quarter - j];
            first_quadrant[j] = (s, c);
        }

        let positive_zero = |v: f64| if v == 0.0 { 0.0 } else { v };
        for (j, slot) in entries.iter_mut().enumerate().take(r / 2 + 1) {
            let (c, s) = if j <= quarter {
                first_quadrant[j]
            } else {
                let (c, s) = first_quadrant[j - quarter];
                (-s, c)
            };
            *slot = Complex::new(T::from_f64(positive_zero(c)), T::from_f64(positive_zero(-s)));
        }
        for j in r / 2 + 1..r {
            entries[j] = entries[r - j].conj();
        }
        Ok(TwiddleTable { resolution, entries })
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    /// Table index step for transforms of length `n`, i.e. `R / n`.
    pub fn stride_for(&self, n: usize) -> Result<usize> {
        if n == 0 || !is_pow2(n) {
            return Err(invalid(format!("twiddle length must be a power of two, got {n}")));
        }
        if n > self.resolution {
            return Err(invalid(format!(
                "length {n} does not divide twiddle resolution {}",
                self.resolution
            )));
        }
        Ok(self.resolution / n)
    }

    /// `W_n^e = e^{-2πi·(e mod n)/n}`; `e` may be negative or exceed `n`.
    pub fn lookup(&self, n: usize, exponent: i64) -> Result<Complex<T>> {
        let stride = self.stride_for(n)?;
        let reduced = exponent.rem_euclid(n as i64) as usize;
        Ok(self.entries[reduced * stride])
    }

    #[inline(always)]
    pub(crate) fn entry(&self, index: usize) -> Complex<T> {
        self.entries[index]
    }
}

impl<T: FftFloat> Default for TwiddleTable<T> {
    fn default() -> Self {
        TwiddleTable::new(DEFAULT_RESOLUTION).expect("default resolution is a power of two")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn small_tables() {
        let t = TwiddleTable::<f64>::new(4).unwrap();
        assert_eq!(t.entries(), &[c(1.0, 0.0), c(0.0, -1.0), c(-1.0, 0.0), c(0.0, 1.0)]);
        let t = TwiddleTable::<f64>::new(2).unwrap();
        assert_eq!(t.entries(), &[c(1.0, 0.0), c(-1.0, 0.0)]);
        let t = TwiddleTable::<f64>::new(8).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((t.entries()[1] - c(h, -h)).norm() < 1e-15);
    }

    #[test]
    fn entry_zero_is_exactly_one() {
        for r in [2usize, 4, 64, 1 << 12] {
            let t = TwiddleTable::<f64>::new(r).unwrap();
            let e0 = t.entries()[0];
            assert_eq!(e0.re.to_bits(), 1.0f64.to_bits());
            assert_eq!(e0.im.to_bits(), 0.0f64.to_bits());
        }
    }

    #[test]
    fn unit_modulus_and_accuracy() {
        let r = 1 << 14;
        let t = TwiddleTable::<f64>::new(r).unwrap();
        for (j, v) in t.entries().iter().enumerate() {
            assert!((v.norm() - 1.0).abs() <= 1e-12);
            let angle = -2.0 * PI * j as f64 / r as f64;
            assert!((v - c(angle.cos(), angle.sin())).norm() < 1e-15, "entry {j}");
        }
    }

    #[test]
    fn rejects_bad_resolution() {
        for r in [0usize, 1, 3, 12, 1000] {
            assert!(TwiddleTable::<f64>::new(r).is_err(), "{r}");
        }
    }

    #[test]
    fn lookup_examples() {
        let t = TwiddleTable::<f64>::new(8).unwrap();
        assert_eq!(t.lookup(8, 0).unwrap(), c(1.0, 0.0));
        assert_eq!(t.lookup(8, 2).unwrap(), c(0.0, -1.0));
        assert_eq!(t.lookup(8, 10).unwrap(), t.lookup(8, 2).unwrap());
        assert_eq!(t.lookup(4, 1).unwrap(), c(0.0, -1.0));
        assert!(t.lookup(16, 1).is_err());
        assert!(t.lookup(6, 1).is_err());
        assert!(t.lookup(0, 1).is_err());
    }

    #[test]
    fn single_precision_table() {
        let t = TwiddleTable::<f32>::new(16).unwrap();
        assert_eq!(t.lookup(4, 1).unwrap(), Complex::new(0.0f32, -1.0));
        assert_eq!(t.lookup(16, -3).unwrap(), t.lookup(16, 3).unwrap().conj());
    }

    proptest! {
        #[test]
        fn periodic_and_conjugate_symmetric(log_n in 1u32..=12, e in -8192i64..8192) {
            let t = TwiddleTable::<f64>::new(1 << 12).unwrap();
            let n = 1usize << log_n;
            let w = t.lookup(n, e).unwrap();
            prop_assert_eq!(w, t.lookup(n, e + n as i64).unwrap());
            prop_assert_eq!(w.conj(), t.lookup(n, -e).unwrap());
            prop_assert!((w.norm() - 1.0).abs() <= 1e-12);
        }
    }
}
