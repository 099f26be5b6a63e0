use crate::baseline::fft_levelwise_with;
use crate::error::{invalid, Error, Result};
use crate::memsim::{account_oracle, AccessRecorder, AccessStats};
use crate::reference::{dft_reference, max_abs_error};
use crate::tiled::{fft_tiled_with, make_plan, Workers, DEFAULT_TILE_CAPACITY};
use crate::twiddle::{TwiddleTable, DEFAULT_RESOLUTION};
use crate::{is_pow2, log2, max_modulus, Complex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::time::Instant;

pub const TABLE1_SIZES: [usize; 7] = [16, 64, 256, 1024, 4096, 16384, 65536];

const MAX_SIZE: usize = 1 << 20;
const MIN_REPS: u32 = 5;
/// Tolerance against the DFT, relative to `N·max|x|`.
const ORACLE_TOL: f64 = 1e-9;
/// Tolerance between the two FFTs above the DFT limit.
const CROSS_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Levelwise,
    Tiled,
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Levelwise, Algorithm::Tiled, Algorithm::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Levelwise => "levelwise",
            Algorithm::Tiled => "tiled",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One report line. Field order is the column order of the CSV report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub size: usize,
    pub algorithm: Algorithm,
    pub passes: usize,
    /// Empty when `size` exceeds the DFT limit.
    pub max_err_vs_oracle: Option<f64>,
    pub slow_elem_accesses: u64,
    pub slow_transactions: u64,
    pub bank_conflict_cycles: u64,
    pub barriers: u64,
    /// Best of `repetitions` timed runs.
    pub wall_time_ns: u64,
    pub repetitions: u32,
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub tile_capacity: usize,
    /// Largest size checked against (and timed as) the brute-force DFT.
    pub oracle_max: usize,
    pub repetitions: u32,
    pub seed: u64,
    /// Worker threads for both FFTs; 1 runs on the calling thread.
    pub threads: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            tile_capacity: DEFAULT_TILE_CAPACITY,
            oracle_max: 8192,
            repetitions: 9,
            seed: 1,
            threads: 1,
        }
    }
}

/// A suite that stopped early, with the rows finished before the failure.
#[derive(Debug)]
pub struct PartialRun {
    pub rows: Vec<BenchRow>,
    pub error: Error,
}

impl fmt::Display for PartialRun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} rows completed)", self.error, self.rows.len())
    }
}

impl std::error::Error for PartialRun {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.error)
    }
}

impl From<Error> for PartialRun {
    fn from(error: Error) -> Self {
        PartialRun { rows: Vec::new(), error }
    }
}

/// Parses `table1` or a comma-separated list of sizes.
pub fn parse_sizes(spec: &str) -> Result<Vec<usize>> {
    if spec.trim().eq_ignore_ascii_case("table1") {
        return Ok(TABLE1_SIZES.to_vec());
    }
    let sizes = spec
        .split(',')
        .map(|s| {
            s.trim().parse::<usize>().map_err(|_| invalid(format!("size {:?} is not an integer", s.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    check_sizes(&sizes)?;
    Ok(sizes)
}

fn check_sizes(sizes: &[usize]) -> Result<()> {
    if sizes.is_empty() {
        return Err(invalid("no sizes given"));
    }
    for (i, &n) in sizes.iter().enumerate() {
        if !(2..=MAX_SIZE).contains(&n) || !is_pow2(n) {
            return Err(invalid(format!(
                "size #{} = {n} is not a power of two in [2, {MAX_SIZE}]",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Runs every size in order. Rows come out grouped by size, in the order
/// levelwise, tiled, oracle.
///
/// Sizes are validated up front. A result that misses the DFT (or, above
/// the DFT limit, disagrees with the other FFT) aborts the run; the rows of
/// earlier sizes are returned with the error.
pub fn run_suite(sizes: &[usize], options: &SuiteOptions) -> Result<Vec<BenchRow>, PartialRun> {
    check_sizes(sizes)?;
    if options.repetitions < MIN_REPS {
        return Err(invalid(format!("repetitions must be at least {MIN_REPS}")).into());
    }
    if options.threads == 0 {
        return Err(invalid("threads must be at least 1").into());
    }
    // the standard table serves every size up to its resolution
    let largest = sizes.iter().copied().max().unwrap_or(2);
    let table = TwiddleTable::<f64>::new(largest.max(DEFAULT_RESOLUTION))?;

    let run = || {
        let mut rows = Vec::with_capacity(3 * sizes.len());
        for &n in sizes {
            if let Err(error) = run_size(n, options, &table, &mut rows) {
                return Err(PartialRun { rows, error });
            }
        }
        Ok(rows)
    };
    if options.threads == 1 {
        run()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.threads)
            .build()
            .map_err(|e| invalid(format!("cannot start {} threads: {e}", options.threads)))?;
        pool.install(run)
    }
}

fn workers(options: &SuiteOptions) -> Workers {
    if options.threads > 1 {
        Workers::Pool
    } else {
        Workers::Single
    }
}

/// The signal for size `n`: its own ChaCha stream, so a size's input does
/// not depend on which other sizes are in the run.
pub(crate) fn signal(n: usize, seed: u64) -> Vec<Complex<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    (0..n).map(|_| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()
}

/// Best-of-`reps` wall time for each job after one untimed run of each.
/// Jobs take turns within every repetition, so drift in machine speed
/// affects them alike.
fn best_of_each(reps: u32, jobs: &mut [&mut dyn FnMut() -> Result<Vec<Complex<f64>>>]) -> Result<Vec<u64>> {
    for job in jobs.iter_mut() {
        std::hint::black_box(job()?);
    }
    let mut best = vec![u64::MAX; jobs.len()];
    for _ in 0..reps {
        for (job, best) in jobs.iter_mut().zip(best.iter_mut()) {
            let start = Instant::now();
            let out = job()?;
            let elapsed = start.elapsed().as_nanos();
            std::hint::black_box(out);
            *best = (*best).min(u64::try_from(elapsed).unwrap_or(u64::MAX));
        }
    }
    Ok(best)
}

fn row(n: usize, algorithm: Algorithm, passes: usize, err: Option<f64>, stats: AccessStats, time: u64, reps: u32) -> BenchRow {
    BenchRow {
        size: n,
        algorithm,
        passes,
        max_err_vs_oracle: err,
        slow_elem_accesses: stats.slow_elem_accesses(),
        slow_transactions: stats.slow_transactions,
        bank_conflict_cycles: stats.bank_conflict_cycles,
        barriers: stats.barriers,
        wall_time_ns: time,
        repetitions: reps,
    }
}

fn run_size(n: usize, options: &SuiteOptions, table: &TwiddleTable<f64>, rows: &mut Vec<BenchRow>) -> Result<()> {
    let x = signal(n, options.seed);
    let plan = make_plan(n, options.tile_capacity)?;
    let config = *plan.config();
    let w = workers(options);
    let reps = options.repetitions;

    let mut lw_rec = AccessRecorder::new(config);
    let lw = fft_levelwise_with(&x, table, Some(&mut lw_rec), w)?;
    let mut tl_rec = AccessRecorder::new(config);
    let tl = fft_tiled_with(&x, &plan, table, Some(&mut tl_rec), w)?;

    let bound = n as f64 * max_modulus(&x);
    let (lw_err, tl_err, oracle) = if n <= options.oracle_max {
        let want = dft_reference(&x)?;
        let lw_err = max_abs_error(&lw, &want)?;
        let tl_err = max_abs_error(&tl, &want)?;
        for (name, err) in [("levelwise", lw_err), ("tiled", tl_err)] {
            if err.is_nan() || err > ORACLE_TOL * bound {
                return Err(Error::Validation(format!(
                    "N={n}: {name} misses the DFT by {err:e} (limit {:e})",
                    ORACLE_TOL * bound
                )));
            }
        }
        (Some(lw_err), Some(tl_err), true)
    } else {
        let diff = max_abs_error(&lw, &tl)?;
        if diff.is_nan() || diff > CROSS_TOL * bound {
            return Err(Error::Validation(format!(
                "N={n}: tiled and levelwise differ by {diff:e} (limit {:e})",
                CROSS_TOL * bound
            )));
        }
        (None, None, false)
    };

    let times = best_of_each(
        reps,
        &mut [&mut || fft_levelwise_with(&x, table, None, w), &mut || fft_tiled_with(&x, &plan, table, None, w)],
    )?;
    let (lw_time, tl_time) = (times[0], times[1]);

    rows.push(row(n, Algorithm::Levelwise, log2(n) as usize, lw_err, lw_rec.stats(), lw_time, reps));
    rows.push(row(n, Algorithm::Tiled, plan.pass_count(), tl_err, tl_rec.stats(), tl_time, reps));
    if oracle {
        let time = best_of_each(reps, &mut [&mut || dft_reference(&x)])?[0];
        rows.push(row(n, Algorithm::Oracle, 1, Some(0.0), account_oracle(n, &config)?, time, reps));
    }
    Ok(())
}
