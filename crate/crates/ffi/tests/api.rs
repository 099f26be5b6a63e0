use memfft_ffi::*;
use std::ffi::CStr;
use std::ptr;

fn message() -> String {
    unsafe { CStr::from_ptr(memfft_last_error_message()) }.to_string_lossy().into_owned()
}

fn signal(n: usize) -> Vec<MemfftComplex> {
    (0..n).map(|i| MemfftComplex { re: (i as f64 * 0.37).sin(), im: (i as f64 * 0.11).cos() }).collect()
}

struct Handles {
    table: *mut MemfftTable,
    plan: *mut MemfftPlan,
}

impl Handles {
    fn new(n: usize, cap: usize) -> Self {
        let mut table = ptr::null_mut();
        let mut plan = ptr::null_mut();
        unsafe {
            assert_eq!(memfft_table_new(n, &mut table), MemfftStatus::Ok);
            assert_eq!(memfft_plan_new(n, cap, true, &mut plan), MemfftStatus::Ok);
        }
        Handles { table, plan }
    }
}

impl Drop for Handles {
    fn drop(&mut self) {
        unsafe {
            memfft_plan_free(self.plan);
            memfft_table_free(self.table);
        }
    }
}

#[test]
fn tiled_matches_reference_and_inverts() {
    let n = 4096;
    let h = Handles::new(n, 1024);
    let x = signal(n);
    let mut want = vec![MemfftComplex::default(); n];
    let mut got = vec![MemfftComplex::default(); n];
    let mut stats = MemfftStats::default();
    unsafe {
        assert_eq!(memfft_dft_reference(x.as_ptr(), want.as_mut_ptr(), n), MemfftStatus::Ok);
        assert_eq!(memfft_fft_tiled(h.plan, h.table, x.as_ptr(), got.as_mut_ptr(), n, &mut stats), MemfftStatus::Ok);
    }
    let err = got.iter().zip(&want).map(|(a, b)| (a.re - b.re).hypot(a.im - b.im)).fold(0.0, f64::max);
    assert!(err <= 1e-9 * n as f64);
    assert_eq!(stats.slow_elem_reads + stats.slow_elem_writes, 2 * n as u64 * 2);
    assert_eq!(stats.barriers, 2);

    let mut analytic = MemfftStats::default();
    unsafe { assert_eq!(memfft_account_tiled(h.plan, &mut analytic), MemfftStatus::Ok) };
    assert_eq!(stats, analytic);

    // in place
    unsafe {
        assert_eq!(memfft_ifft_tiled(h.plan, h.table, got.as_ptr(), got.as_mut_ptr(), n), MemfftStatus::Ok);
    }
    let err = got.iter().zip(&x).map(|(a, b)| (a.re - b.re).hypot(a.im - b.im)).fold(0.0, f64::max);
    assert!(err <= 1e-10);
    assert_eq!(message(), "");
}

#[test]
fn levelwise_and_accounting() {
    let n = 1024;
    let h = Handles::new(n, 1024);
    let x = signal(n);
    let (mut a, mut b) = (vec![MemfftComplex::default(); n], vec![MemfftComplex::default(); n]);
    let (mut live, mut model) = (MemfftStats::default(), MemfftStats::default());
    unsafe {
        assert_eq!(memfft_fft_levelwise(h.table, x.as_ptr(), a.as_mut_ptr(), n, &mut live), MemfftStatus::Ok);
        assert_eq!(memfft_fft_tiled(h.plan, h.table, x.as_ptr(), b.as_mut_ptr(), n, ptr::null_mut()), MemfftStatus::Ok);
        assert_eq!(memfft_account_levelwise(n, &mut model), MemfftStatus::Ok);
    }
    assert_eq!(live, model);
    assert_eq!(live.barriers, 10);
    assert!(a.iter().zip(&b).all(|(p, q)| (p.re - q.re).abs() < 1e-9 && (p.im - q.im).abs() < 1e-9));

    let (mut passes, mut factor, mut ratio) = (0usize, 0usize, 0.0f64);
    unsafe {
        assert_eq!(memfft_plan_pass_count(h.plan, &mut passes), MemfftStatus::Ok);
        assert_eq!(memfft_plan_factor(h.plan, 0, &mut factor), MemfftStatus::Ok);
        assert_eq!(memfft_reduction_ratio(h.plan, &mut ratio), MemfftStatus::Ok);
        assert_eq!(memfft_plan_factor(h.plan, 1, &mut factor), MemfftStatus::InvalidArgument);
    }
    assert_eq!((passes, factor, ratio), (1, 1024, 10.0));
}

#[test]
fn memory_model_primitives() {
    let column: Vec<usize> = (0..16).map(|i| i * 32).collect();
    let same = [9usize; 16];
    let contiguous: Vec<usize> = (0..32).collect();
    let (mut d, mut t) = (0u32, 0u64);
    unsafe {
        assert_eq!(memfft_bank_conflict_degree(column.as_ptr(), 16, &mut d), MemfftStatus::Ok);
        assert_eq!(d, 16);
        assert_eq!(memfft_bank_conflict_degree(same.as_ptr(), 16, &mut d), MemfftStatus::Ok);
        assert_eq!(d, 1);
        assert_eq!(memfft_coalesced_transactions(contiguous.as_ptr(), 32, &mut t), MemfftStatus::Ok);
        assert_eq!(t, 4);
    }
}

#[test]
fn errors_are_reported() {
    let mut table = ptr::null_mut();
    let mut plan = ptr::null_mut();
    unsafe {
        assert_eq!(memfft_table_new(1000, &mut table), MemfftStatus::InvalidArgument);
        assert!(table.is_null());
        assert!(!message().is_empty());
        assert_eq!(memfft_table_new(64, ptr::null_mut()), MemfftStatus::NullPointer);
        assert_eq!(memfft_plan_new(48, 16, true, &mut plan), MemfftStatus::InvalidArgument);
        let h = Handles::new(64, 16);
        let x = signal(32);
        let mut y = vec![MemfftComplex::default(); 32];
        assert_eq!(
            memfft_fft_tiled(h.plan, h.table, x.as_ptr(), y.as_mut_ptr(), 32, ptr::null_mut()),
            MemfftStatus::LengthMismatch
        );
        assert_eq!(
            memfft_fft_tiled(ptr::null(), h.table, x.as_ptr(), y.as_mut_ptr(), 32, ptr::null_mut()),
            MemfftStatus::NullPointer
        );
        assert!(message().contains("plan"));
        memfft_table_free(ptr::null_mut());
        memfft_plan_free(ptr::null_mut());
    }
    let version = unsafe { CStr::from_ptr(memfft_version()) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}
