//! C ABI for `memfft`.
//!
//! Every fallible function returns a [`MemfftStatus`]; on anything other
//! than `MEMFFT_STATUS_OK` the message is available from
//! [`memfft_last_error_message`] on the same thread. Handles are created by
//! `*_new` and released by the matching `*_free`. Sample buffers are
//! interleaved `(re, im)` doubles and may alias (in-place calls are fine).

use memfft::baseline::fft_levelwise;
use memfft::memsim::{
    account_levelwise, account_tiled, bank_conflict_degree, coalesced_transactions, reduction_ratio,
    AccessRecorder, AccessStats, ExecConfig,
};
use memfft::reference::dft_reference;
use memfft::tiled::{fft_tiled, ifft_tiled, Padding, StagePlan};
use memfft::twiddle::TwiddleTable;
use memfft::Error;
use num_complex::Complex;
use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

#[repr(i32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MemfftStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    LengthMismatch = 3,
    Validation = 4,
    Internal = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MemfftComplex {
    pub re: f64,
    pub im: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MemfftStats {
    pub slow_elem_reads: u64,
    pub slow_elem_writes: u64,
    pub slow_transactions: u64,
    pub fast_accesses: u64,
    pub bank_conflict_cycles: u64,
    pub barriers: u64,
    pub twiddle_fetches: u64,
}

impl From<AccessStats> for MemfftStats {
    fn from(s: AccessStats) -> Self {
        MemfftStats {
            slow_elem_reads: s.slow_elem_reads,
            slow_elem_writes: s.slow_elem_writes,
            slow_transactions: s.slow_transactions,
            fast_accesses: s.fast_accesses,
            bank_conflict_cycles: s.bank_conflict_cycles,
            barriers: s.barriers,
            twiddle_fetches: s.twiddle_fetches,
        }
    }
}

/// Twiddle lookup table.
pub struct MemfftTable(TwiddleTable<f64>);

/// Factorization of one transform length into passes.
pub struct MemfftPlan(StagePlan);

const _: () = assert!(std::mem::size_of::<MemfftComplex>() == std::mem::size_of::<Complex<f64>>());
const _: () = assert!(std::mem::align_of::<MemfftComplex>() == std::mem::align_of::<Complex<f64>>());

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Failure(MemfftStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidArgument(_) => MemfftStatus::InvalidArgument,
            Error::LengthMismatch { .. } => MemfftStatus::LengthMismatch,
            Error::Validation(_) => MemfftStatus::Validation,
            _ => MemfftStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(MemfftStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure> + UnwindSafe) -> MemfftStatus {
    match catch_unwind(f) {
        Ok(Ok(())) => {
            set_error("");
            MemfftStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MemfftStatus::Panic
        }
    }
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Copies `len` samples out of a caller buffer.
unsafe fn read_samples(input: *const MemfftComplex, len: usize) -> Result<Vec<Complex<f64>>, Failure> {
    if input.is_null() {
        return Err(null("input"));
    }
    let mut v = Vec::with_capacity(len);
    ptr::copy(input.cast::<Complex<f64>>(), v.as_mut_ptr(), len);
    v.set_len(len);
    Ok(v)
}

unsafe fn write_samples(output: *mut MemfftComplex, data: &[Complex<f64>]) {
    ptr::copy(data.as_ptr(), output.cast::<Complex<f64>>(), data.len());
}

unsafe fn write_out<T>(out: *mut T, value: T) {
    if !out.is_null() {
        out.write(value);
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn memfft_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next `memfft_*` call on the same thread.
#[no_mangle]
pub extern "C" fn memfft_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a twiddle table of `resolution` entries (a power of two that every
/// transform length used with it must divide).
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn memfft_table_new(resolution: usize, out: *mut *mut MemfftTable) -> MemfftStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let table = TwiddleTable::new(resolution)?;
        out.write(Box::into_raw(Box::new(MemfftTable(table))));
        Ok(())
    })
}

/// # Safety
/// `table` must be null or come from [`memfft_table_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn memfft_table_free(table: *mut MemfftTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Plans an `n`-point transform with the fewest passes whose tiles hold at
/// most `tile_capacity` elements, under the default machine model.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn memfft_plan_new(
    n: usize,
    tile_capacity: usize,
    padded: bool,
    out: *mut *mut MemfftPlan,
) -> MemfftStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let padding = if padded { Padding::Padded } else { Padding::Unpadded };
        let plan = StagePlan::new(n, tile_capacity, ExecConfig::default(), padding)?;
        out.write(Box::into_raw(Box::new(MemfftPlan(plan))));
        Ok(())
    })
}

/// # Safety
/// `plan` must be null or come from [`memfft_plan_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn memfft_plan_free(plan: *mut MemfftPlan) {
    if !plan.is_null() {
        drop(Box::from_raw(plan));
    }
}

/// # Safety
/// `plan` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn memfft_plan_pass_count(plan: *const MemfftPlan, out: *mut usize) -> MemfftStatus {
    guard(|| {
        let plan = handle(plan, "plan")?;
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(plan.0.pass_count());
        Ok(())
    })
}

/// Length of the sub-transform of pass `index` (0-based).
///
/// # Safety
/// `plan` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn memfft_plan_factor(plan: *const MemfftPlan, index: usize, out: *mut usize) -> MemfftStatus {
    guard(|| {
        let plan = handle(plan, "plan")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let factor = plan.0.factors().get(index).ok_or_else(|| {
            Failure(MemfftStatus::InvalidArgument, format!("pass {index} out of range"))
        })?;
        out.write(*factor);
        Ok(())
    })
}

/// Forward tiled FFT of `len` samples. When `stats` is non-null the run is
/// traced and its counters are written there.
///
/// # Safety
/// `input` and `output` must hold `len` samples; handles must be live;
/// `stats` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn memfft_fft_tiled(
    plan: *const MemfftPlan,
    table: *const MemfftTable,
    input: *const MemfftComplex,
    output: *mut MemfftComplex,
    len: usize,
    stats: *mut MemfftStats,
) -> MemfftStatus {
    guard(|| {
        let (plan, table) = (handle(plan, "plan")?, handle(table, "table")?);
        if output.is_null() {
            return Err(null("output"));
        }
        let x = read_samples(input, len)?;
        let mut rec = (!stats.is_null()).then(|| AccessRecorder::new(*plan.0.config()));
        let y = fft_tiled(&x, &plan.0, &table.0, rec.as_mut())?;
        write_samples(output, &y);
        if let Some(rec) = rec {
            write_out(stats, rec.stats().into());
        }
        Ok(())
    })
}

/// Inverse tiled FFT, scaled by `1/len`.
///
/// # Safety
/// As for [`memfft_fft_tiled`].
#[no_mangle]
pub unsafe extern "C" fn memfft_ifft_tiled(
    plan: *const MemfftPlan,
    table: *const MemfftTable,
    input: *const MemfftComplex,
    output: *mut MemfftComplex,
    len: usize,
) -> MemfftStatus {
    guard(|| {
        let (plan, table) = (handle(plan, "plan")?, handle(table, "table")?);
        if output.is_null() {
            return Err(null("output"));
        }
        let x = read_samples(input, len)?;
        write_samples(output, &ifft_tiled(&x, &plan.0, &table.0)?);
        Ok(())
    })
}

/// Forward level-wise radix-2 FFT; `stats` as in [`memfft_fft_tiled`].
///
/// # Safety
/// As for [`memfft_fft_tiled`].
#[no_mangle]
pub unsafe extern "C" fn memfft_fft_levelwise(
    table: *const MemfftTable,
    input: *const MemfftComplex,
    output: *mut MemfftComplex,
    len: usize,
    stats: *mut MemfftStats,
) -> MemfftStatus {
    guard(|| {
        let table = handle(table, "table")?;
        if output.is_null() {
            return Err(null("output"));
        }
        let x = read_samples(input, len)?;
        let mut rec = (!stats.is_null()).then(|| AccessRecorder::new(ExecConfig::default()));
        let y = fft_levelwise(&x, &table.0, rec.as_mut())?;
        write_samples(output, &y);
        if let Some(rec) = rec {
            write_out(stats, rec.stats().into());
        }
        Ok(())
    })
}

/// Direct O(N²) DFT of any length.
///
/// # Safety
/// `input` and `output` must hold `len` samples.
#[no_mangle]
pub unsafe extern "C" fn memfft_dft_reference(
    input: *const MemfftComplex,
    output: *mut MemfftComplex,
    len: usize,
) -> MemfftStatus {
    guard(|| {
        if output.is_null() {
            return Err(null("output"));
        }
        let x = read_samples(input, len)?;
        write_samples(output, &dft_reference(&x)?);
        Ok(())
    })
}

/// Analytic counters of the level-wise FFT under the default machine model.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn memfft_account_levelwise(n: usize, out: *mut MemfftStats) -> MemfftStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(account_levelwise(n, &ExecConfig::default())?.into());
        Ok(())
    })
}

/// Analytic counters of the tiled FFT for `plan`.
///
/// # Safety
/// `plan` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn memfft_account_tiled(plan: *const MemfftPlan, out: *mut MemfftStats) -> MemfftStatus {
    guard(|| {
        let plan = handle(plan, "plan")?;
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(account_tiled(&plan.0, plan.0.config())?.into());
        Ok(())
    })
}

/// `log2 N / p` for the plan's length `N`.
///
/// # Safety
/// `plan` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn memfft_reduction_ratio(plan: *const MemfftPlan, out: *mut f64) -> MemfftStatus {
    guard(|| {
        let plan = handle(plan, "plan")?;
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(reduction_ratio(plan.0.n_total(), &plan.0)?);
        Ok(())
    })
}

unsafe fn addresses<'a>(addrs: *const usize, len: usize) -> Result<&'a [usize], Failure> {
    if addrs.is_null() {
        return Err(null("addresses"));
    }
    Ok(std::slice::from_raw_parts(addrs, len))
}

/// Slow-memory transactions of one warp access under the default model.
///
/// # Safety
/// `addrs` must hold `len` element addresses; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn memfft_coalesced_transactions(addrs: *const usize, len: usize, out: *mut u64) -> MemfftStatus {
    guard(|| {
        let addrs = addresses(addrs, len)?;
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(coalesced_transactions(addrs, &ExecConfig::default())?);
        Ok(())
    })
}

/// Bank-conflict degree of one half-warp access under the default model.
///
/// # Safety
/// `addrs` must hold `len` word addresses; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn memfft_bank_conflict_degree(addrs: *const usize, len: usize, out: *mut u32) -> MemfftStatus {
    guard(|| {
        let addrs = addresses(addrs, len)?;
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(bank_conflict_degree(addrs, &ExecConfig::default())?);
        Ok(())
    })
}
