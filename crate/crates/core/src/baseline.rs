//! Level-by-level radix-2 FFT.
//!
//! Decimation in time: one bit-reversal sweep, then `log2 N` levels, each
//! of which reads and writes the whole array in slow memory and ends in a
//! barrier. This is the reference point the tiled executor is measured
//! against.

use crate::error::{invalid, Result};
use crate::memsim::{AccessRecorder, Probe, Tally};
use crate::tiled::{reverse_bits, Workers};
use crate::twiddle::TwiddleTable;
use crate::{is_pow2, Complex, FftFloat};
use rayon::prelude::*;

/// Radix-2 butterfly: `(a + w·b, a - w·b)`.
#[inline(always)]
pub fn butterfly<T: FftFloat>(a: Complex<T>, b: Complex<T>, w: Complex<T>) -> (Complex<T>, Complex<T>) {
    let t = w * b;
    (a + t, a - t)
}

/// Index map `j -> bitrev(j)` over `log2 n` bits. An involution.
pub fn bit_reverse_permutation(n: usize) -> Result<Vec<usize>> {
    if !is_pow2(n) {
        return Err(invalid(format!("bit reversal needs a power-of-two length, got {n}")));
    }
    Ok((0..n).map(|j| reverse_bits(j, n)).collect())
}

fn check<T: FftFloat>(x: &[Complex<T>], table: &TwiddleTable<T>) -> Result<()> {
    let n = x.len();
    if n < 2 || !is_pow2(n) {
        return Err(invalid(format!("transform length must be a power of two >= 2, got {n}")));
    }
    table.stride_for(n)?;
    Ok(())
}

/// Forward FFT, natural order in and out.
///
/// With a recorder, each level is recorded as its own stage with `N`
/// element reads, `N` element writes and one barrier; the bit-reversal
/// sweep goes to [`AccessRecorder::reorder`].
pub fn fft_levelwise<T: FftFloat>(
    x: &[Complex<T>],
    table: &TwiddleTable<T>,
    recorder: Option<&mut AccessRecorder>,
) -> Result<Vec<Complex<T>>> {
    fft_levelwise_with(x, table, recorder, Workers::Single)
}

/// [`fft_levelwise`] with a choice of workers. Recorded runs are always
/// sequential; the counters do not depend on the worker count.
pub fn fft_levelwise_with<T: FftFloat>(
    x: &[Complex<T>],
    table: &TwiddleTable<T>,
    recorder: Option<&mut AccessRecorder>,
    workers: Workers,
) -> Result<Vec<Complex<T>>> {
    check(x, table)?;
    let mut data = x.to_vec();
    match recorder {
        Some(rec) => run_recorded(&mut data, table, rec),
        None => {
            bit_reverse_in_place(&mut data);
            let mut half = 1;
            while half < data.len() {
                match workers {
                    Workers::Single => level(&mut data, half, table),
                    Workers::Pool => level_parallel(&mut data, half, table),
                }
                half *= 2;
            }
        }
    }
    Ok(data)
}

/// Inverse FFT as `conj(fft(conj(X))) / N`.
pub fn ifft_levelwise<T: FftFloat>(spectrum: &[Complex<T>], table: &TwiddleTable<T>) -> Result<Vec<Complex<T>>> {
    let conj: Vec<_> = spectrum.iter().map(|v| v.conj()).collect();
    let out = fft_levelwise(&conj, table, None)?;
    let scale = T::one() / T::from_f64(spectrum.len() as f64);
    Ok(out.into_iter().map(|v| v.conj() * scale).collect())
}

fn bit_reverse_in_place<T: Copy>(data: &mut [T]) {
    let n = data.len();
    for i in 0..n {
        let r = reverse_bits(i, n);
        if i < r {
            data.swap(i, r);
        }
    }
}

fn level<T: FftFloat>(data: &mut [Complex<T>], half: usize, table: &TwiddleTable<T>) {
    let step = table.resolution() / (2 * half);
    for group in data.chunks_exact_mut(2 * half) {
        let (lo, hi) = group.split_at_mut(half);
        for (k, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
            let (p, q) = butterfly(*a, *b, table.entry(k * step));
            *a = p;
            *b = q;
        }
    }
}

fn level_parallel<T: FftFloat>(data: &mut [Complex<T>], half: usize, table: &TwiddleTable<T>) {
    const GRAIN: usize = 1024;
    let step = table.resolution() / (2 * half);
    if half >= GRAIN {
        for group in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = group.split_at_mut(half);
            lo.par_chunks_mut(GRAIN)
                .zip(hi.par_chunks_mut(GRAIN))
                .enumerate()
                .for_each(|(c, (lo, hi))| {
                    for (i, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                        let (p, q) = butterfly(*a, *b, table.entry((c * GRAIN + i) * step));
                        *a = p;
                        *b = q;
                    }
                });
        }
    } else {
        let per_task = (2 * GRAIN).max(2 * half);
        data.par_chunks_mut(per_task).for_each(|chunk| level(chunk, half, table));
    }
}

fn run_recorded<T: FftFloat>(data: &mut [Complex<T>], table: &TwiddleTable<T>, rec: &mut AccessRecorder) {
    let n = data.len();
    let warp = rec.config().warp_size;

    let mut tally = rec.tally();
    let mut reads = Vec::with_capacity(warp);
    let mut writes = Vec::with_capacity(warp);
    for i0 in (0..n).step_by(warp) {
        reads.clear();
        writes.clear();
        for i in i0..(i0 + warp).min(n) {
            reads.push(reverse_bits(i, n));
            writes.push(i);
        }
        tally.slow_read(&reads);
        tally.slow_write(&writes);
    }
    rec.absorb_reorder(tally.stats);
    bit_reverse_in_place(data);

    let mut tops = Vec::with_capacity(warp);
    let mut bottoms = Vec::with_capacity(warp);
    let mut half = 1;
    while half < n {
        rec.begin_stage();
        let mut tally: Tally = rec.tally();
        let step = table.resolution() / (2 * half);
        // one thread per butterfly, consecutive threads on consecutive butterflies
        for b0 in (0..n / 2).step_by(warp) {
            tops.clear();
            bottoms.clear();
            for b in b0..(b0 + warp).min(n / 2) {
                let top = (b / half) * 2 * half + b % half;
                let (p, q) = butterfly(data[top], data[top + half], table.entry((b % half) * step));
                data[top] = p;
                data[top + half] = q;
                tops.push(top);
                bottoms.push(top + half);
            }
            tally.slow_read(&tops);
            tally.slow_read(&bottoms);
            tally.slow_write(&tops);
            tally.slow_write(&bottoms);
            tally.twiddles(tops.len() as u64);
        }
        rec.absorb(tally.stats);
        rec.barrier();
        half *= 2;
    }
}
