use super::buffer::{row_butterflies, row_butterflies_fast, twiddle_tile, FastBuffer, RowOrder, RowTables};
use super::plan::{StageGeometry, StagePlan};
use super::reverse_bits;
use crate::error::{invalid, Error, Result};
use crate::memsim::{AccessRecorder, AccessStats, NoProbe, Probe, Tally};
use crate::twiddle::TwiddleTable;
use crate::{Complex, FftFloat};
use rayon::prelude::*;

/// How tiles (or level-wise butterflies) are distributed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Workers {
    #[default]
    Single,
    /// Use the rayon pool the call runs in.
    Pool,
}

/// Forward FFT through the tiled multi-pass executor, natural order in
/// and out.
pub fn fft_tiled<T: FftFloat>(
    x: &[Complex<T>],
    plan: &StagePlan,
    table: &TwiddleTable<T>,
    recorder: Option<&mut AccessRecorder>,
) -> Result<Vec<Complex<T>>> {
    fft_tiled_with(x, plan, table, recorder, Workers::Single)
}

/// [`fft_tiled`] with a choice of workers. Tiles of one pass are disjoint,
/// so the output is bit-identical for any worker count, and recorded
/// counters are merged per pass.
pub fn fft_tiled_with<T: FftFloat>(
    x: &[Complex<T>],
    plan: &StagePlan,
    table: &TwiddleTable<T>,
    mut recorder: Option<&mut AccessRecorder>,
    workers: Workers,
) -> Result<Vec<Complex<T>>> {
    let n = plan.n_total();
    if x.len() != n {
        return Err(Error::LengthMismatch { expected: n, actual: x.len() });
    }
    table.stride_for(n)?;
    if let Some(rec) = recorder.as_deref() {
        if rec.config() != plan.config() {
            return Err(invalid("recorder and plan use different machine models"));
        }
    }

    if recorder.is_none() && workers == Workers::Single {
        return Ok(run_single(x, plan, table));
    }
    let zero = Complex::new(T::zero(), T::zero());
    let mut out = vec![zero; n];
    // the second buffer is only needed from the second pass on
    let mut spare = Vec::new();
    for stage in plan.stages() {
        let src: &[Complex<T>] = if stage.index == 1 {
            x
        } else {
            std::mem::swap(&mut out, &mut spare);
            if out.is_empty() {
                out = vec![zero; n];
            }
            &spare
        };
        match recorder.as_deref_mut() {
            Some(rec) => {
                rec.begin_stage();
                let part = run_pass_recorded(plan, stage, table, src, &mut out, workers);
                rec.absorb(part);
                rec.barrier();
            }
            None => run_pass(plan, stage, table, src, &mut out, workers),
        }
    }
    Ok(out)
}

/// Sequential unrecorded run with as few full-size buffers as possible.
///
/// Intermediate passes emit their tiles in output order, so their result
/// is built by appending. In a plan of at most two passes every tile of
/// the last pass reads exactly the indices it writes, so that pass runs in
/// place.
fn run_single<T: FftFloat>(x: &[Complex<T>], plan: &StagePlan, table: &TwiddleTable<T>) -> Vec<Complex<T>> {
    let n = plan.n_total();
    let p = plan.pass_count();
    let mut data: Option<Vec<Complex<T>>> = None;
    for stage in plan.stages() {
        let tables = RowTables::new(stage.fft_len, table);
        let mut buf = FastBuffer::with_geometry(stage.clone(), 0);
        let src: &[Complex<T>] = data.as_deref().unwrap_or(x);
        data = Some(if stage.index < p {
            let mut out = Vec::with_capacity(n);
            for tile in 0..stage.tiles {
                compute_tile(plan, stage, table, src, tile, &mut buf, &tables, &mut NoProbe);
                append_rows(stage, &buf, &mut out);
            }
            out
        } else if p == 2 {
            let mut inout = data.take().expect("first pass output");
            for tile in 0..stage.tiles {
                compute_tile(plan, stage, table, &inout, tile, &mut buf, &tables, &mut NoProbe);
                store_tile_fast(plan, stage, &buf, &mut inout);
            }
            inout
        } else {
            let mut out = vec![Complex::new(T::zero(), T::zero()); n];
            for tile in 0..stage.tiles {
                compute_tile(plan, stage, table, src, tile, &mut buf, &tables, &mut NoProbe);
                store_tile_fast(plan, stage, &buf, &mut out);
            }
            out
        });
    }
    data.expect("a plan has at least one pass")
}

fn append_rows<T: FftFloat>(stage: &StageGeometry, buf: &FastBuffer<T>, out: &mut Vec<Complex<T>>) {
    let (w, rows, stride) = (stage.line_width, stage.rows_per_tile, stage.padded_stride);
    for r in 0..rows {
        for chunk in 0..stage.fft_len / w {
            out.extend_from_slice(&buf.cells()[(chunk * rows + r) * stride..][..w]);
        }
    }
}

/// Inverse FFT as `conj(fft_tiled(conj(X))) / N`.
pub fn ifft_tiled<T: FftFloat>(
    spectrum: &[Complex<T>],
    plan: &StagePlan,
    table: &TwiddleTable<T>,
) -> Result<Vec<Complex<T>>> {
    let conj: Vec<_> = spectrum.iter().map(|v| v.conj()).collect();
    let out = fft_tiled(&conj, plan, table, None)?;
    let scale = T::one() / T::from_f64(spectrum.len() as f64);
    Ok(out.into_iter().map(|v| v.conj() * scale).collect())
}

fn run_pass<T: FftFloat>(
    plan: &StagePlan,
    stage: &StageGeometry,
    table: &TwiddleTable<T>,
    src: &[Complex<T>],
    dst: &mut [Complex<T>],
    workers: Workers,
) {
    let tables = RowTables::new(stage.fft_len, table);
    let fresh = || FastBuffer::with_geometry(stage.clone(), 0);
    let tile_elems = stage.tile_elements();
    let last = stage.index == plan.pass_count();
    match (workers, last) {
        (Workers::Single, _) => {
            let mut buf = fresh();
            for tile in 0..stage.tiles {
                compute_tile(plan, stage, table, src, tile, &mut buf, &tables, &mut NoProbe);
                store_tile_fast(plan, stage, &buf, dst);
            }
        }
        (Workers::Pool, false) => {
            // intermediate passes write each tile's rows to one contiguous block
            dst.par_chunks_mut(tile_elems).enumerate().for_each_init(fresh, |buf, (tile, out)| {
                compute_tile(plan, stage, table, src, tile, buf, &tables, &mut NoProbe);
                store_rows_contiguous(stage, buf, out);
            });
        }
        (Workers::Pool, true) => {
            let bufs: Vec<FastBuffer<T>> = (0..stage.tiles)
                .into_par_iter()
                .map(|tile| {
                    let mut buf = fresh();
                    compute_tile(plan, stage, table, src, tile, &mut buf, &tables, &mut NoProbe);
                    buf
                })
                .collect();
            for buf in &bufs {
                store_tile_fast(plan, stage, buf, dst);
            }
        }
    }
}

fn run_pass_recorded<T: FftFloat>(
    plan: &StagePlan,
    stage: &StageGeometry,
    table: &TwiddleTable<T>,
    src: &[Complex<T>],
    dst: &mut [Complex<T>],
    workers: Workers,
) -> AccessStats {
    let config = *plan.config();
    let tables = RowTables::new(stage.fft_len, table);
    let one = |tile: usize| {
        let mut buf = FastBuffer::with_geometry(stage.clone(), 0);
        let mut tally = Tally::new(config);
        compute_tile(plan, stage, table, src, tile, &mut buf, &tables, &mut tally);
        (buf, tally)
    };
    let tiles: Vec<(FastBuffer<T>, Tally)> = match workers {
        Workers::Single => (0..stage.tiles).map(one).collect(),
        Workers::Pool => (0..stage.tiles).into_par_iter().map(one).collect(),
    };
    let mut total = AccessStats::default();
    for (buf, mut tally) in tiles {
        store_tile(plan, stage, &buf, dst, &mut tally);
        total += tally.stats;
    }
    total
}

/// Loads tile `tile` of `stage` into `buf` (rows bit-reversed), applies
/// the inter-pass twiddles and runs the row FFTs.
#[allow(clippy::too_many_arguments)]
fn compute_tile<T: FftFloat, P: Probe>(
    plan: &StagePlan,
    stage: &StageGeometry,
    table: &TwiddleTable<T>,
    src: &[Complex<T>],
    tile: usize,
    buf: &mut FastBuffer<T>,
    tables: &RowTables<T>,
    probe: &mut P,
) {
    let first_row = tile * stage.rows_per_tile;
    buf.reset(first_row, RowOrder::BitReversed);
    if P::ACTIVE {
        load_tile(plan, stage, src, buf, probe);
        if stage.index > 1 {
            twiddle_tile(buf, table, probe);
        }
        row_butterflies(buf, table, probe);
    } else {
        load_tile_fast(plan, stage, table, src, buf, tables);
        row_butterflies_fast(buf, tables);
    }
}

/// Unrecorded load, row by row, with the inter-pass twiddles applied on
/// the way in.
fn load_tile_fast<T: FftFloat>(
    plan: &StagePlan,
    stage: &StageGeometry,
    table: &TwiddleTable<T>,
    src: &[Complex<T>],
    buf: &mut FastBuffer<T>,
    tables: &RowTables<T>,
) {
    let first_row = buf.first_row();
    let cells = buf.cells_mut();
    let (w, rows, stride) = (stage.line_width, stage.rows_per_tile, stage.padded_stride);
    let span = stage.span_before * stage.fft_len;
    let (tw_step, mask) = (table.resolution() / span, span - 1);
    for r in 0..rows {
        let (base, step) = plan.gather_line(stage, first_row + r);
        let k = (first_row + r) / stage.groups;
        for (chunk, revs) in tables.bitrev.chunks_exact(w).enumerate() {
            let line = &mut cells[(chunk * rows + r) * stride..][..w];
            if stage.index == 1 {
                for (cell, &a) in line.iter_mut().zip(revs) {
                    *cell = src[base + step * a];
                }
            } else {
                for (cell, &a) in line.iter_mut().zip(revs) {
                    *cell = src[base + step * a] * table.entry(((a * k) & mask) * tw_step);
                }
            }
        }
    }
}

/// Gathers a tile: lanes walk down each column of the line grid, placing
/// element `a` of a row at position `bitrev(a)`.
fn load_tile<T: FftFloat, P: Probe>(
    plan: &StagePlan,
    stage: &StageGeometry,
    src: &[Complex<T>],
    buf: &mut FastBuffer<T>,
    probe: &mut P,
) {
    let first_row = buf.first_row();
    let cells = buf.cells_mut();
    let mut slow = Vec::with_capacity(stage.warp_size);
    let mut fast = Vec::with_capacity(stage.warp_size);
    for col in 0..stage.line_width {
        for line0 in (0..stage.lines_per_tile).step_by(stage.warp_size) {
            slow.clear();
            fast.clear();
            for line in line0..(line0 + stage.warp_size).min(stage.lines_per_tile) {
                let (r, j) = stage.cell(line, col);
                let a = reverse_bits(j, stage.fft_len);
                let from = plan.gather_source(stage, first_row + r, a);
                let off = line * stage.padded_stride + col;
                cells[off] = src[from];
                slow.push(from);
                fast.push(off);
            }
            probe.slow_read(&slow);
            probe.fast(&fast);
        }
    }
}

/// Writes a computed tile back to slow memory.
///
/// Intermediate passes store each row contiguously, so lanes run along
/// a line. The last pass scatters to natural order, where consecutive rows
/// are adjacent, so lanes walk down columns unless the tile has one row.
fn store_tile<T: FftFloat, P: Probe>(
    plan: &StagePlan,
    stage: &StageGeometry,
    buf: &FastBuffer<T>,
    dst: &mut [Complex<T>],
    probe: &mut P,
) {
    let first_row = buf.first_row();
    let cells = buf.cells();
    let mut slow = Vec::with_capacity(stage.warp_size);
    let mut fast = Vec::with_capacity(stage.warp_size);
    if store_down_columns(plan, stage) {
        for col in 0..stage.line_width {
            for line0 in (0..stage.lines_per_tile).step_by(stage.warp_size) {
                slow.clear();
                fast.clear();
                for line in line0..(line0 + stage.warp_size).min(stage.lines_per_tile) {
                    let (r, c) = stage.cell(line, col);
                    let to = plan.store_target(stage, first_row + r, c);
                    let off = line * stage.padded_stride + col;
                    dst[to] = cells[off];
                    if P::ACTIVE {
                        slow.push(to);
                        fast.push(off);
                    }
                }
                if P::ACTIVE {
                    probe.fast(&fast);
                    probe.slow_write(&slow);
                }
            }
        }
    } else {
        let (w, rows, stride) = (stage.line_width, stage.rows_per_tile, stage.padded_stride);
        for r in 0..rows {
            let (base, step) = plan.store_line(stage, first_row + r);
            for (chunk, c0) in (0..stage.fft_len).step_by(w).enumerate() {
                let off0 = (chunk * rows + r) * stride;
                let line = &cells[off0..][..w];
                let first = base + step * c0;
                if step == 1 {
                    dst[first..first + w].copy_from_slice(line);
                } else {
                    for (d, &v) in dst[first..].iter_mut().step_by(step).zip(line) {
                        *d = v;
                    }
                }
                if P::ACTIVE {
                    slow.clear();
                    slow.extend((c0..c0 + w).map(|c| base + step * c));
                    fast.clear();
                    fast.extend(off0..off0 + w);
                    probe.fast(&fast);
                    probe.slow_write(&slow);
                }
            }
        }
    }
}

/// Unrecorded store. The last pass writes, for each output position, the
/// run of consecutive rows held by the tile.
fn store_tile_fast<T: FftFloat>(plan: &StagePlan, stage: &StageGeometry, buf: &FastBuffer<T>, dst: &mut [Complex<T>]) {
    let first_row = buf.first_row();
    if stage.index < plan.pass_count() {
        let rows = &mut dst[first_row * stage.fft_len..][..stage.tile_elements()];
        return store_rows_contiguous(stage, buf, rows);
    }
    let (w, rows, stride) = (stage.line_width, stage.rows_per_tile, stage.padded_stride);
    let cells = buf.cells();
    for (chunk, c0) in (0..stage.fft_len).step_by(w).enumerate() {
        for col in 0..w {
            let out = &mut dst[first_row + stage.rows * (c0 + col)..][..rows];
            for (r, v) in out.iter_mut().enumerate() {
                *v = cells[(chunk * rows + r) * stride + col];
            }
        }
    }
}

pub(crate) fn store_down_columns(plan: &StagePlan, stage: &StageGeometry) -> bool {
    stage.index == plan.pass_count() && stage.rows_per_tile > 1
}

fn store_rows_contiguous<T: FftFloat>(stage: &StageGeometry, buf: &FastBuffer<T>, out: &mut [Complex<T>]) {
    let (w, rows, stride) = (stage.line_width, stage.rows_per_tile, stage.padded_stride);
    for (r, row) in out.chunks_exact_mut(stage.fft_len).enumerate() {
        for (chunk, part) in row.chunks_exact_mut(w).enumerate() {
            part.copy_from_slice(&buf.cells()[(chunk * rows + r) * stride..][..w]);
        }
    }
}

/// Source index for every destination index of the exchange that feeds
/// pass `stage`: destination `g·Ns + a` takes row `g`, element `a` of that
/// pass's gather.
pub fn exchange_permutation(stage: usize, plan: &StagePlan) -> Result<Vec<usize>> {
    let geo = plan.stage(stage)?;
    let mut perm = vec![0; plan.n_total()];
    for g in 0..geo.rows {
        for a in 0..geo.fft_len {
            perm[g * geo.fft_len + a] = plan.gather_source(geo, g, a);
        }
    }
    Ok(perm)
}

/// Regroups slow memory so the sequences of pass `stage` are contiguous.
///
/// For a two-pass plan this is a blocked transpose of the `rows × cols`
/// view. The stand-alone exchange costs one read sweep, one write sweep and
/// a barrier; a single-pass plan needs no regrouping and records nothing.
pub fn exchange_transpose<T: FftFloat>(
    data: &[Complex<T>],
    stage: usize,
    plan: &StagePlan,
    recorder: Option<&mut AccessRecorder>,
) -> Result<Vec<Complex<T>>> {
    if data.len() != plan.n_total() {
        return Err(Error::LengthMismatch { expected: plan.n_total(), actual: data.len() });
    }
    let perm = exchange_permutation(stage, plan)?;
    let out: Vec<_> = perm.iter().map(|&i| data[i]).collect();
    let identity = perm.iter().enumerate().all(|(i, &p)| i == p);
    if let (Some(rec), false) = (recorder, identity) {
        let geo = plan.stage(stage)?;
        rec.begin_stage();
        let mut tally = rec.tally();
        let warp = plan.config().warp_size;
        let mut reads = Vec::with_capacity(warp);
        let mut writes = Vec::with_capacity(warp);
        for a in 0..geo.fft_len {
            for g0 in (0..geo.rows).step_by(warp) {
                reads.clear();
                writes.clear();
                for g in g0..(g0 + warp).min(geo.rows) {
                    reads.push(perm[g * geo.fft_len + a]);
                    writes.push(g * geo.fft_len + a);
                }
                tally.slow_read(&reads);
                tally.slow_write(&writes);
            }
        }
        rec.absorb(tally.stats);
        rec.barrier();
    }
    Ok(out)
}

/// Source index for each destination of the transpose of a row-major
/// `rows × cols` matrix.
pub fn transpose_index_map(rows: usize, cols: usize) -> Vec<usize> {
    let mut map = vec![0; rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            map[c * rows + r] = r * cols + c;
        }
    }
    map
}
