//! Brute-force O(N²) DFT used as ground truth by every test and by the bench.
//!
//! Sums are evaluated in `f64` regardless of the sample type, with the
//! rotation `e^{-2πi·nk/N}` looked up from an `N`-entry table indexed by
//! `nk mod N`, so the phase never accumulates rounding.

use crate::error::{invalid, Error, Result};
use crate::{Complex, FftFloat};
use std::f64::consts::PI;

fn unit_roots(n: usize) -> Vec<Complex<f64>> {
    (0..n)
        .map(|j| {
            let angle = 2.0 * PI * j as f64 / n as f64;
            Complex::new(angle.cos(), -angle.sin())
        })
        .collect()
}

fn to_f64<T: FftFloat>(v: Complex<T>) -> Complex<f64> {
    Complex::new(v.re.to_f64().unwrap_or(f64::NAN), v.im.to_f64().unwrap_or(f64::NAN))
}

fn check_input<T: FftFloat>(x: &[Complex<T>]) -> Result<()> {
    if x.is_empty() {
        return Err(invalid("signal must contain at least one sample"));
    }
    if let Some(pos) = x.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(invalid(format!("sample {pos} is not finite")));
    }
    Ok(())
}

fn direct<T: FftFloat>(x: &[Complex<T>], inverse: bool) -> Vec<Complex<T>> {
    let n = x.len();
    let roots = unit_roots(n);
    let input: Vec<Complex<f64>> = x.iter().copied().map(to_f64).collect();
    let scale = if inverse { 1.0 / n as f64 } else { 1.0 };
    (0..n)
        .map(|k| {
            let mut acc = Complex::new(0.0, 0.0);
            let mut idx = 0usize;
            for v in &input {
                let w = if inverse { roots[idx].conj() } else { roots[idx] };
                acc += v * w;
                idx += k;
                if idx >= n {
                    idx -= n;
                }
            }
            let acc = acc * scale;
            Complex::new(T::from_f64(acc.re), T::from_f64(acc.im))
        })
        .collect()
}

/// Unnormalized forward DFT, `X(k) = Σ x(n)·e^{-2πi·nk/N}`. Any `N ≥ 1`.
pub fn dft_reference<T: FftFloat>(x: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    check_input(x)?;
    Ok(direct(x, false))
}

/// Inverse DFT with `1/N` scaling, `x(n) = (1/N)·Σ X(k)·e^{+2πi·nk/N}`.
pub fn idft_reference<T: FftFloat>(spectrum: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    check_input(spectrum)?;
    Ok(direct(spectrum, true))
}

/// `max_k |a(k) - b(k)|`.
pub fn max_abs_error<T: FftFloat>(a: &[Complex<T>], b: &[Complex<T>]) -> Result<T> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(a.iter()
        .zip(b)
        .fold(T::zero(), |m, (p, q)| m.max((*p - *q).norm())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn close(a: &[Complex<f64>], b: &[Complex<f64>]) -> bool {
        max_abs_error(a, b).unwrap() < 1e-14
    }

    #[test]
    fn impulse_and_constant() {
        let impulse = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let ones = [c(1.0, 0.0); 4];
        let four = [c(4.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        assert!(close(&dft_reference(&impulse).unwrap(), &ones));
        assert!(close(&dft_reference(&ones).unwrap(), &four));
        assert!(close(&idft_reference(&four).unwrap(), &ones));
        assert!(close(&idft_reference(&ones).unwrap(), &impulse));
    }

    #[test]
    fn shifted_impulse() {
        let x = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let want = [c(1.0, 0.0), c(0.0, -1.0), c(-1.0, 0.0), c(0.0, 1.0)];
        assert!(close(&dft_reference(&x).unwrap(), &want));
    }

    #[test]
    fn non_power_of_two_lengths_are_accepted() {
        let x = [c(1.0, 0.0); 3];
        let got = dft_reference(&x).unwrap();
        assert!(close(&got, &[c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]));
        assert_eq!(dft_reference(&[c(2.5, -1.0)]).unwrap(), vec![c(2.5, -1.0)]);
    }

    #[test]
    fn rejects_empty_and_non_finite() {
        let empty: [Complex<f64>; 0] = [];
        assert!(matches!(dft_reference(&empty), Err(Error::InvalidArgument(_))));
        assert!(matches!(idft_reference(&empty), Err(Error::InvalidArgument(_))));
        assert!(dft_reference(&[c(f64::NAN, 0.0)]).is_err());
        assert!(dft_reference(&[c(0.0, f64::INFINITY)]).is_err());
    }

    #[test]
    fn error_metric() {
        assert_eq!(max_abs_error(&[c(1.0, 0.0), c(0.0, 0.0)], &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap(), 0.0);
        assert_eq!(max_abs_error(&[c(1.0, 0.0)], &[c(0.0, 0.0)]).unwrap(), 1.0);
        assert_eq!(max_abs_error(&[c(3.0, 4.0)], &[c(0.0, 0.0)]).unwrap(), 5.0);
        assert!(matches!(
            max_abs_error(&[c(1.0, 0.0)], &[c(1.0, 0.0), c(0.0, 0.0)]),
            Err(Error::LengthMismatch { expected: 1, actual: 2 })
        ));
    }

    #[test]
    fn single_precision_oracle() {
        let x = [Complex::new(1.0f32, 0.0); 8];
        let got = dft_reference(&x).unwrap();
        assert_eq!(got[0], Complex::new(8.0f32, 0.0));
        assert!(got[1..].iter().all(|v| v.norm() < 1e-6));
    }
}
