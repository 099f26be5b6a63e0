//! Memory-optimized multi-pass radix-2 FFT.
//!
//! The crate pairs two FFT executors with a deterministic model of a
//! two-level memory hierarchy (slow global memory, fast banked tile memory):
//!
//! * [`baseline::fft_levelwise`] runs one radix-2 level per sweep over the
//!   whole array, so every level round-trips slow memory.
//! * [`tiled::fft_tiled`] factors `N` into `p` tile-sized passes. Each pass
//!   gathers tiles into fast memory, runs all of its butterflies there and
//!   writes back once, so slow memory is touched `p` times instead of
//!   `log2 N` times.
//!
//! Both executors can report their memory traffic through an
//! [`memsim::AccessRecorder`]; [`memsim::account_levelwise`] and
//! [`memsim::account_tiled`] derive the same counters analytically.
//! [`reference`] holds the O(N²) DFT used as ground truth, and [`bench`]
//! drives the size sweep behind the `memfft` CLI.

pub mod baseline;
pub mod bench;
mod error;
pub mod memsim;
pub mod reference;
pub mod tiled;
pub mod twiddle;

pub use error::{Error, Result};
pub use num_complex::Complex;

use num_traits::{Float, FloatConst, NumAssign};
use std::fmt::Debug;

/// Floating-point element type accepted by the transforms (`f64` or `f32`).
pub trait FftFloat:
    Float + FloatConst + NumAssign + Debug + Default + Send + Sync + 'static
{
    fn from_f64(v: f64) -> Self;
}

impl FftFloat for f64 {
    #[inline(always)]
    fn from_f64(v: f64) -> Self {
        v
    }
}

impl FftFloat for f32 {
    #[inline(always)]
    fn from_f64(v: f64) -> Self {
        v as f32
    }
}

/// One sample of a signal or spectrum.
pub type ComplexSample<T = f64> = Complex<T>;

pub(crate) fn is_pow2(n: usize) -> bool {
    n != 0 && n & (n - 1) == 0
}

pub(crate) fn log2(n: usize) -> u32 {
    debug_assert!(is_pow2(n));
    n.trailing_zeros()
}

/// Largest modulus over a signal, `max |x(n)|`.
pub fn max_modulus<T: FftFloat>(x: &[Complex<T>]) -> T {
    x.iter().fold(T::zero(), |m, v| m.max(v.norm()))
}
