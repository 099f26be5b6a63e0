//! Counters derived from the algorithms' access schedules alone, without
//! moving any data. These are the numbers the live recorders must match.

use super::model::{count_segments, degree};
use super::{AccessStats, ExecConfig};
use crate::error::{invalid, Result};
use crate::tiled::{reverse_bits, StageGeometry, StagePlan};
use crate::{is_pow2, log2};

fn check_n(n: usize) -> Result<()> {
    if n < 2 || !is_pow2(n) {
        return Err(invalid(format!("transform length must be a power of two >= 2, got {n}")));
    }
    Ok(())
}

/// Per-level counters of the level-wise FFT, bit reversal excluded.
pub fn account_levelwise_levels(n: usize, config: &ExecConfig) -> Result<Vec<AccessStats>> {
    check_n(n)?;
    config.validate()?;
    let warp = config.warp_size;
    let mut out = Vec::with_capacity(log2(n) as usize);
    let mut addrs = Vec::with_capacity(warp);
    let mut half = 1;
    while half < n {
        let mut transactions = 0;
        for b0 in (0..n / 2).step_by(warp) {
            for upper in [0, half] {
                addrs.clear();
                addrs.extend((b0..(b0 + warp).min(n / 2)).map(|b| (b / half) * 2 * half + b % half + upper));
                transactions += count_segments(&addrs, config);
            }
        }
        out.push(AccessStats {
            slow_elem_reads: n as u64,
            slow_elem_writes: n as u64,
            // each warp writes back exactly the segments it read
            slow_transactions: 2 * transactions,
            twiddle_fetches: n as u64 / 2,
            barriers: 1,
            ..Default::default()
        });
        half *= 2;
    }
    Ok(out)
}

/// Totals of the level-wise FFT: `N·log2 N` reads and writes, `log2 N`
/// barriers. The bit-reversal sweep is reported by
/// [`account_bit_reverse`].
pub fn account_levelwise(n: usize, config: &ExecConfig) -> Result<AccessStats> {
    Ok(account_levelwise_levels(n, config)?.into_iter().sum())
}

/// The out-of-place bit-reversal sweep: consecutive lanes read
/// `bitrev(i)` and write `i`.
pub fn account_bit_reverse(n: usize, config: &ExecConfig) -> Result<AccessStats> {
    check_n(n)?;
    config.validate()?;
    let warp = config.warp_size;
    let mut transactions = 0;
    let mut addrs = Vec::with_capacity(warp);
    for i0 in (0..n).step_by(warp) {
        let end = (i0 + warp).min(n);
        addrs.clear();
        addrs.extend((i0..end).map(|i| reverse_bits(i, n)));
        transactions += count_segments(&addrs, config);
        addrs.clear();
        addrs.extend(i0..end);
        transactions += count_segments(&addrs, config);
    }
    Ok(AccessStats {
        slow_elem_reads: n as u64,
        slow_elem_writes: n as u64,
        slow_transactions: transactions,
        ..Default::default()
    })
}

/// Brute-force DFT: every output reads all `N` inputs (one broadcast
/// transaction per warp step) and is written once.
pub fn account_oracle(n: usize, config: &ExecConfig) -> Result<AccessStats> {
    if n == 0 {
        return Err(invalid("transform length must be at least 1"));
    }
    config.validate()?;
    let n64 = n as u64;
    let warps = n.div_ceil(config.warp_size) as u64;
    let mut write_tx = 0;
    let mut addrs = Vec::with_capacity(config.warp_size);
    for k0 in (0..n).step_by(config.warp_size) {
        addrs.clear();
        addrs.extend(k0..(k0 + config.warp_size).min(n));
        write_tx += count_segments(&addrs, config);
    }
    Ok(AccessStats {
        slow_elem_reads: n64 * n64,
        slow_elem_writes: n64,
        slow_transactions: warps * n64 + write_tx,
        twiddle_fetches: n64 * n64,
        barriers: 1,
        ..Default::default()
    })
}

/// Per-pass counters of the tiled FFT.
pub fn account_tiled_stages(plan: &StagePlan, config: &ExecConfig) -> Result<Vec<AccessStats>> {
    if plan.config() != config {
        return Err(invalid("plan was built for a different machine model"));
    }
    config.validate()?;
    let n = plan.n_total() as u64;
    Ok(plan
        .stages()
        .iter()
        .map(|g| {
            let levels = log2(g.fft_len) as u64;
            let interstage = g.index > 1;
            let tiles = g.tiles as u64;
            let per_tile_conflicts = tile_conflicts(plan, g, config, interstage);
            AccessStats {
                slow_elem_reads: n,
                slow_elem_writes: n,
                slow_transactions: pass_transactions(plan, g, config),
                // load, store, twiddle read+write, four operand touches per butterfly
                fast_accesses: 2 * n + if interstage { 2 * n } else { 0 } + 2 * n * levels,
                bank_conflict_cycles: tiles * per_tile_conflicts,
                barriers: 1,
                twiddle_fetches: n / 2 * levels + if interstage { n } else { 0 },
            }
        })
        .collect())
}

/// Totals of the tiled FFT: `N·p` reads and writes, `p` barriers.
pub fn account_tiled(plan: &StagePlan, config: &ExecConfig) -> Result<AccessStats> {
    Ok(account_tiled_stages(plan, config)?.into_iter().sum())
}

/// `log2 N / p`: how many times less slow traffic the plan moves than the
/// level-wise FFT.
pub fn reduction_ratio(n: usize, plan: &StagePlan) -> Result<f64> {
    check_n(n)?;
    if plan.n_total() != n {
        return Err(invalid(format!("plan is for N={}, not {n}", plan.n_total())));
    }
    Ok(log2(n) as f64 / plan.pass_count() as f64)
}

/// Lanes walking down column `col` of the line grid, one warp at a time.
fn column_warps(g: &StageGeometry) -> impl Iterator<Item = (usize, std::ops::Range<usize>)> + '_ {
    (0..g.line_width).flat_map(move |col| {
        (0..g.lines_per_tile)
            .step_by(g.warp_size)
            .map(move |l0| (col, l0..(l0 + g.warp_size).min(g.lines_per_tile)))
    })
}

fn final_store_by_column(plan: &StagePlan, g: &StageGeometry) -> bool {
    g.index == plan.pass_count() && g.rows_per_tile > 1
}

fn pass_transactions(plan: &StagePlan, g: &StageGeometry, config: &ExecConfig) -> u64 {
    let mut total = 0;
    let mut addrs = Vec::with_capacity(g.warp_size);
    for tile in 0..g.tiles {
        let first = tile * g.rows_per_tile;
        for (col, lines) in column_warps(g) {
            addrs.clear();
            addrs.extend(lines.map(|l| {
                let (r, j) = g.cell(l, col);
                plan.gather_source(g, first + r, reverse_bits(j, g.fft_len))
            }));
            total += count_segments(&addrs, config);
        }
        if final_store_by_column(plan, g) {
            for (col, lines) in column_warps(g) {
                addrs.clear();
                addrs.extend(lines.map(|l| {
                    let (r, c) = g.cell(l, col);
                    plan.store_target(g, first + r, c)
                }));
                total += count_segments(&addrs, config);
            }
        } else {
            for r in 0..g.rows_per_tile {
                for c0 in (0..g.fft_len).step_by(g.line_width) {
                    addrs.clear();
                    addrs.extend((c0..c0 + g.line_width).map(|c| plan.store_target(g, first + r, c)));
                    total += count_segments(&addrs, config);
                }
            }
        }
    }
    total
}

/// Conflict cycles of one tile; every tile of a pass has the same layout.
fn tile_conflicts(plan: &StagePlan, g: &StageGeometry, config: &ExecConfig, interstage: bool) -> u64 {
    let mut cycles = 0;
    let mut charge = |offsets: &[usize], times: u64| {
        for half in offsets.chunks(config.half_warp) {
            cycles += times * 2 * (degree(half, config.bank_count) as u64).saturating_sub(1);
        }
    };
    let mut offs = Vec::with_capacity(g.warp_size);
    let mut bots = Vec::with_capacity(g.warp_size);

    // load, twiddle (read + write), column-order store
    let column_touches = 1 + if interstage { 2 } else { 0 } + u64::from(final_store_by_column(plan, g));
    for (col, lines) in column_warps(g) {
        offs.clear();
        offs.extend(lines.map(|l| l * g.padded_stride + col));
        charge(&offs, column_touches);
    }
    if !final_store_by_column(plan, g) {
        for r in 0..g.rows_per_tile {
            for c0 in (0..g.fft_len).step_by(g.line_width) {
                offs.clear();
                offs.extend((c0..c0 + g.line_width).map(|c| g.fast_offset(r, c)));
                charge(&offs, 1);
            }
        }
    }

    let mut half = 1;
    while half < g.fft_len {
        if half < g.line_width {
            for b in 0..g.line_width / 2 {
                let col = (b / half) * 2 * half + b % half;
                for l0 in (0..g.lines_per_tile).step_by(g.warp_size) {
                    let lines = l0..(l0 + g.warp_size).min(g.lines_per_tile);
                    offs.clear();
                    offs.extend(lines.clone().map(|l| l * g.padded_stride + col));
                    bots.clear();
                    bots.extend(lines.map(|l| l * g.padded_stride + col + half));
                    charge(&offs, 2);
                    charge(&bots, 2);
                }
            }
        } else {
            for r in 0..g.rows_per_tile {
                for b0 in (0..g.fft_len / 2).step_by(g.line_width) {
                    offs.clear();
                    bots.clear();
                    for b in b0..b0 + g.line_width {
                        let j = (b / half) * 2 * half + b % half;
                        offs.push(g.fast_offset(r, j));
                        bots.push(g.fast_offset(r, j + half));
                    }
                    charge(&offs, 2);
                    charge(&bots, 2);
                }
            }
        }
        half *= 2;
    }
    cycles
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiled::{make_plan, Padding};

    fn cfg() -> ExecConfig {
        ExecConfig::default()
    }

    #[test]
    fn levelwise_examples() {
        for (n, rw, barriers) in [(16, 64, 4), (2, 2, 1), (4096, 49152, 12)] {
            let s = account_levelwise(n, &cfg()).unwrap();
            assert_eq!((s.slow_elem_reads, s.slow_elem_writes, s.barriers), (rw, rw, barriers), "N={n}");
        }
        assert!(account_levelwise(12, &cfg()).is_err());
        assert!(account_levelwise(1, &cfg()).is_err());
    }

    #[test]
    fn levelwise_transactions_on_wide_levels_are_minimal() {
        // from half = 32 up, each warp stream covers 32 consecutive elements
        let levels = account_levelwise_levels(1024, &cfg()).unwrap();
        for s in &levels[5..] {
            assert_eq!(s.slow_transactions, 2 * (1024 * 16 / 128));
        }
        assert!(levels[0].slow_transactions > levels[5].slow_transactions);
    }

    #[test]
    fn tiled_examples() {
        let plan = make_plan(4096, 1024).unwrap();
        let s = account_tiled(&plan, &cfg()).unwrap();
        assert_eq!((s.slow_elem_reads, s.slow_elem_writes, s.barriers), (8192, 8192, 2));
        assert_eq!(s.bank_conflict_cycles, 0);
        let unpadded = plan.with_padding(Padding::Unpadded);
        assert!(account_tiled(&unpadded, &cfg()).unwrap().bank_conflict_cycles > 0);

        let s = account_tiled(&make_plan(1024, 1024).unwrap(), &cfg()).unwrap();
        assert_eq!((s.slow_elem_reads, s.slow_elem_writes, s.barriers), (1024, 1024, 1));
    }

    #[test]
    fn tiled_rejects_foreign_config() {
        let plan = make_plan(4096, 1024).unwrap();
        let other = ExecConfig { bank_count: 32, ..cfg() };
        assert!(account_tiled(&plan, &other).is_err());
    }

    #[test]
    fn ratio_examples() {
        for (n, want) in [(1024, 10.0), (4096, 6.0), (65536, 8.0)] {
            assert_eq!(reduction_ratio(n, &make_plan(n, 1024).unwrap()).unwrap(), want);
        }
        assert_eq!(reduction_ratio(256, &make_plan(256, 2).unwrap()).unwrap(), 1.0);
        assert!(reduction_ratio(2048, &make_plan(4096, 1024).unwrap()).is_err());
    }

    #[test]
    fn oracle_and_reorder_sweeps() {
        let s = account_oracle(64, &cfg()).unwrap();
        assert_eq!(s.slow_elem_accesses(), 64 * 64 + 64);
        assert_eq!(s.slow_transactions, 2 * 64 + 8);
        let r = account_bit_reverse(16, &cfg()).unwrap();
        assert_eq!((r.slow_elem_reads, r.slow_elem_writes), (16, 16));
        // bit-reversed reads of 16 elements stay within two segments
        assert_eq!(r.slow_transactions, 2 + 2);
    }
}
