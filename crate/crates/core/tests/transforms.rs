mod common;

use common::{energy, pow2_range, signal};
use memfft::baseline::{fft_levelwise, fft_levelwise_with, ifft_levelwise};
use memfft::max_modulus;
use memfft::memsim::ExecConfig;
use memfft::reference::{dft_reference, idft_reference, max_abs_error};
use memfft::tiled::{fft_tiled, fft_tiled_with, ifft_tiled, make_plan, Padding, StagePlan, Workers};
use memfft::twiddle::TwiddleTable;
use memfft::Complex;
use proptest::prelude::*;

#[test]
fn both_ffts_match_the_dft_up_to_4096() {
    let table = TwiddleTable::new(4096).unwrap();
    for n in pow2_range(1, 12) {
        let plan = make_plan(n, 1024).unwrap();
        let seeds = if n <= 1024 { 20 } else { 4 };
        for seed in 0..seeds {
            let x = signal(n, seed);
            let want = dft_reference(&x).unwrap();
            let bound = 1e-9 * n as f64 * max_modulus(&x);
            assert!(max_abs_error(&fft_levelwise(&x, &table, None).unwrap(), &want).unwrap() <= bound);
            assert!(max_abs_error(&fft_tiled(&x, &plan, &table, None).unwrap(), &want).unwrap() <= bound);
        }
    }
}

#[test]
fn small_tiles_force_many_passes() {
    let table = TwiddleTable::new(1 << 12).unwrap();
    for cap in [2usize, 4, 8, 32] {
        for n in pow2_range(1, 12) {
            let plan = make_plan(n, cap).unwrap();
            let x = signal(n, cap as u64);
            let got = fft_tiled(&x, &plan, &table, None).unwrap();
            let want = fft_levelwise(&x, &table, None).unwrap();
            assert!(max_abs_error(&got, &want).unwrap() <= 1e-9 * n as f64 * max_modulus(&x), "N={n} cap={cap}");
        }
    }
}

#[test]
fn large_sizes_agree_with_levelwise() {
    let table = TwiddleTable::new(1 << 16).unwrap();
    for n in pow2_range(13, 16) {
        let plan = make_plan(n, 1024).unwrap();
        let x = signal(n, n as u64);
        let a = fft_tiled(&x, &plan, &table, None).unwrap();
        let b = fft_levelwise(&x, &table, None).unwrap();
        assert!(max_abs_error(&a, &b).unwrap() <= 1e-8 * n as f64 * max_modulus(&x));
        let parseval = (energy(&a) / n as f64 - energy(&x)).abs();
        assert!(parseval <= 1e-9 * n as f64 * energy(&x), "N={n}");
    }
}

#[test]
fn round_trips_up_to_65536() {
    let table = TwiddleTable::new(1 << 16).unwrap();
    for n in [2, 64, 4096, 65536] {
        let plan = make_plan(n, 1024).unwrap();
        let x = signal(n, 99);
        let back = ifft_tiled(&fft_tiled(&x, &plan, &table, None).unwrap(), &plan, &table).unwrap();
        assert!(max_abs_error(&back, &x).unwrap() <= 1e-10, "N={n}");
        let back = ifft_levelwise(&fft_levelwise(&x, &table, None).unwrap(), &table).unwrap();
        assert!(max_abs_error(&back, &x).unwrap() <= 1e-10, "N={n}");
    }
}

#[test]
fn dft_round_trip() {
    let x = signal(16, 5);
    let back = idft_reference(&dft_reference(&x).unwrap()).unwrap();
    assert!(max_abs_error(&back, &x).unwrap() <= 1e-12);
}

#[test]
fn padding_does_not_change_results() {
    let table = TwiddleTable::new(1 << 14).unwrap();
    let x = signal(1 << 14, 3);
    let padded = make_plan(1 << 14, 256).unwrap();
    let bare = padded.with_padding(Padding::Unpadded);
    assert_eq!(fft_tiled(&x, &padded, &table, None).unwrap(), fft_tiled(&x, &bare, &table, None).unwrap());
}

#[test]
fn worker_pools_give_identical_output() {
    let table = TwiddleTable::new(1 << 15).unwrap();
    let x = signal(1 << 15, 17);
    let plan = StagePlan::new(1 << 15, 32, ExecConfig::default(), Padding::Padded).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let (tl, lw) = pool.install(|| {
        (
            fft_tiled_with(&x, &plan, &table, None, Workers::Pool).unwrap(),
            fft_levelwise_with(&x, &table, None, Workers::Pool).unwrap(),
        )
    });
    assert_eq!(tl, fft_tiled(&x, &plan, &table, None).unwrap());
    assert_eq!(lw, fft_levelwise(&x, &table, None).unwrap());
}

#[test]
fn single_precision() {
    let table = TwiddleTable::<f32>::new(1024).unwrap();
    let x: Vec<Complex<f32>> = signal(1024, 4).iter().map(|v| Complex::new(v.re as f32, v.im as f32)).collect();
    let plan = make_plan(1024, 64).unwrap();
    let a = fft_tiled(&x, &plan, &table, None).unwrap();
    let b = fft_levelwise(&x, &table, None).unwrap();
    let err = a.iter().zip(&b).map(|(p, q)| (p - q).norm()).fold(0.0f32, f32::max);
    assert!(err < 1e-3, "{err}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn linearity(log_n in 1u32..=10, seed in any::<u64>(), alpha in -2.0f64..2.0) {
        let n = 1usize << log_n;
        let table = TwiddleTable::new(1024).unwrap();
        let plan = make_plan(n, 16).unwrap();
        let (x, y) = (signal(n, seed), signal(n, seed ^ 0xabcdef));
        let mix: Vec<_> = x.iter().zip(&y).map(|(a, b)| a * alpha + b).collect();
        let fx = fft_tiled(&x, &plan, &table, None).unwrap();
        let fy = fft_tiled(&y, &plan, &table, None).unwrap();
        let fmix = fft_tiled(&mix, &plan, &table, None).unwrap();
        let want: Vec<_> = fx.iter().zip(&fy).map(|(a, b)| a * alpha + b).collect();
        prop_assert!(max_abs_error(&fmix, &want).unwrap() <= 1e-9 * n as f64 * 3.0);
    }

    #[test]
    fn shift_theorem(log_n in 2u32..=9, shift in 0usize..512, seed in any::<u64>()) {
        let n = 1usize << log_n;
        let shift = shift % n;
        let table = TwiddleTable::new(512).unwrap();
        let plan = make_plan(n, 8).unwrap();
        let x = signal(n, seed);
        let shifted: Vec<_> = (0..n).map(|i| x[(i + n - shift) % n]).collect();
        let fx = fft_tiled(&x, &plan, &table, None).unwrap();
        let fs = fft_tiled(&shifted, &plan, &table, None).unwrap();
        for k in 0..n {
            let w = table.lookup(n, (k * shift) as i64).unwrap();
            prop_assert!((fs[k] - fx[k] * w).norm() <= 1e-9 * n as f64);
        }
    }

    #[test]
    fn any_factorization_works(seed in any::<u64>(), split in proptest::collection::vec(1u32..=4, 1..=4)) {
        let factors: Vec<usize> = split.iter().map(|&b| 1usize << b).collect();
        let n: usize = factors.iter().product();
        let table = TwiddleTable::new(1 << 16).unwrap();
        let plan = StagePlan::with_factors(n, 16, factors, ExecConfig::default(), Padding::Padded).unwrap();
        let x = signal(n, seed);
        let got = fft_tiled(&x, &plan, &table, None).unwrap();
        let want = dft_reference(&x).unwrap();
        prop_assert!(max_abs_error(&got, &want).unwrap() <= 1e-9 * n as f64 * max_modulus(&x));
    }
}

#[test]
fn tiled_tracks_levelwise_closely() {
    let table = TwiddleTable::new(1 << 18).unwrap();
    for n in pow2_range(1, 18) {
        let plan = make_plan(n, 1024).unwrap();
        let x = signal(n, 40 + n as u64);
        let a = fft_tiled(&x, &plan, &table, None).unwrap();
        let b = fft_levelwise(&x, &table, None).unwrap();
        assert!(max_abs_error(&a, &b).unwrap() <= 1e-10 * n as f64 * max_modulus(&x), "N={n}");
    }
}
