use super::plan::{Padding, StageGeometry, StagePlan};
use super::reverse_bits;
use crate::baseline::butterfly;
use crate::error::{invalid, Error, Result};
use crate::memsim::{AccessRecorder, ExecConfig, NoProbe, Probe};
use crate::twiddle::TwiddleTable;
use crate::{is_pow2, Complex, FftFloat};

/// Element order inside each row of a tile.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowOrder {
    Natural,
    BitReversed,
}

/// A tile resident in fast memory.
///
/// Holds `rows_per_tile` rows of `fft_len` elements laid out in padded
/// lines as described on [`StageGeometry`]. Padding cells stay zero and are
/// never read as data.
#[derive(Clone, Debug)]
pub struct FastBuffer<T = f64> {
    geometry: StageGeometry,
    first_row: usize,
    order: RowOrder,
    cells: Vec<Complex<T>>,
}

impl<T: FftFloat> FastBuffer<T> {
    /// Stand-alone tile of `rows × row_len` elements.
    ///
    /// Fails if `rows · row_len` exceeds `capacity` or `row_len` is not a
    /// power of two.
    pub fn new(
        rows: usize,
        row_len: usize,
        capacity: usize,
        config: &ExecConfig,
        padding: Padding,
    ) -> Result<Self> {
        if rows == 0 || !is_pow2(row_len) {
            return Err(invalid(format!(
                "tile needs at least one row and a power-of-two row length, got {rows} x {row_len}"
            )));
        }
        let elements = rows
            .checked_mul(row_len)
            .ok_or_else(|| invalid("tile size overflows"))?;
        if elements > capacity {
            return Err(invalid(format!(
                "tile of {rows} x {row_len} exceeds the fast-memory capacity {capacity}"
            )));
        }
        let width = row_len.min(config.warp_size);
        let geometry =
            StageGeometry::with_tile(1, elements, row_len, 1, rows, width, config, padding);
        Ok(Self::with_geometry(geometry, 0))
    }

    /// Empty tile `tile` of pass `stage` of `plan`.
    pub fn for_tile(plan: &StagePlan, stage: usize, tile: usize) -> Result<Self> {
        let geometry = plan.stage(stage)?.clone();
        if tile >= geometry.tiles {
            return Err(invalid(format!(
                "tile {tile} outside 0..{} for stage {stage}",
                geometry.tiles
            )));
        }
        let first_row = tile * geometry.rows_per_tile;
        Ok(Self::with_geometry(geometry, first_row))
    }

    pub(crate) fn with_geometry(geometry: StageGeometry, first_row: usize) -> Self {
        let cells = vec![Complex::new(T::zero(), T::zero()); geometry.plane_words()];
        FastBuffer { geometry, first_row, order: RowOrder::Natural, cells }
    }

    pub(crate) fn reset(&mut self, first_row: usize, order: RowOrder) {
        self.first_row = first_row;
        self.order = order;
    }

    pub fn geometry(&self) -> &StageGeometry {
        &self.geometry
    }

    #[allow(clippy::misnamed_getters)]
    pub fn rows(&self) -> usize {
        self.geometry.rows_per_tile
    }

    pub fn row_len(&self) -> usize {
        self.geometry.fft_len
    }

    /// Global index of the tile's first row within its pass.
    pub fn first_row(&self) -> usize {
        self.first_row
    }

    pub fn order(&self) -> RowOrder {
        self.order
    }

    /// Number of data elements (padding excluded).
    pub fn len(&self) -> usize {
        self.geometry.tile_elements()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, row: usize, pos: usize) -> Complex<T> {
        self.cells[self.geometry.fast_offset(row, pos)]
    }

    pub fn set(&mut self, row: usize, pos: usize, value: Complex<T>) {
        let off = self.geometry.fast_offset(row, pos);
        self.cells[off] = value;
    }

    /// Fills the tile from `rows · row_len` row-major values in natural
    /// order.
    pub fn fill(&mut self, data: &[Complex<T>]) -> Result<()> {
        if data.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), actual: data.len() });
        }
        let len = self.row_len();
        for (i, &v) in data.iter().enumerate() {
            self.set(i / len, i % len, v);
        }
        self.order = RowOrder::Natural;
        Ok(())
    }

    /// Row-major copy of the data cells, position by position.
    pub fn to_vec(&self) -> Vec<Complex<T>> {
        let len = self.row_len();
        (0..self.len()).map(|i| self.get(i / len, i % len)).collect()
    }

    /// Raw padded cells of one plane-equivalent, padding included.
    pub fn cells(&self) -> &[Complex<T>] {
        &self.cells
    }

    pub(crate) fn cells_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.cells
    }
}

/// In-place radix-2 FFT of every row of the tile.
///
/// Rows in [`RowOrder::Natural`] are first bit-reverse permuted inside the
/// tile; rows already loaded in [`RowOrder::BitReversed`] go straight to
/// the butterflies. Afterwards the rows hold their spectra in natural
/// order. Only fast-memory accesses are recorded.
pub fn stage_row_fft<T: FftFloat>(
    buffer: &mut FastBuffer<T>,
    table: &TwiddleTable<T>,
    recorder: Option<&mut AccessRecorder>,
) -> Result<()> {
    table.stride_for(buffer.row_len())?;
    match recorder {
        Some(rec) => {
            let mut tally = rec.tally();
            if buffer.order == RowOrder::Natural {
                bit_reverse_rows(buffer, &mut tally);
            }
            row_butterflies(buffer, table, &mut tally);
            rec.absorb(tally.stats);
        }
        None => {
            if buffer.order == RowOrder::Natural {
                bit_reverse_rows(buffer, &mut NoProbe);
            }
            row_butterflies(buffer, table, &mut NoProbe);
        }
    }
    Ok(())
}

fn bit_reverse_rows<T: FftFloat, P: Probe>(buffer: &mut FastBuffer<T>, probe: &mut P) {
    let g = buffer.geometry.clone();
    let mut first = Vec::with_capacity(g.warp_size);
    let mut second = Vec::with_capacity(g.warp_size);
    for j in 0..g.fft_len {
        let rj = reverse_bits(j, g.fft_len);
        if rj <= j {
            continue;
        }
        // lanes walk the rows at a fixed pair of positions
        for row0 in (0..g.rows_per_tile).step_by(g.warp_size) {
            first.clear();
            second.clear();
            for r in row0..(row0 + g.warp_size).min(g.rows_per_tile) {
                let (x, y) = (g.fast_offset(r, j), g.fast_offset(r, rj));
                buffer.cells.swap(x, y);
                if P::ACTIVE {
                    first.push(x);
                    second.push(y);
                }
            }
            if P::ACTIVE {
                probe.fast(&first);
                probe.fast(&second);
                probe.fast(&first);
                probe.fast(&second);
            }
        }
    }
    buffer.order = RowOrder::BitReversed;
}

/// Radix-2 decimation-in-time levels over bit-reversed rows.
///
/// Levels whose butterfly span fits inside a line run with one lane per
/// line (a half-warp walks down a column of the tile); wider levels run
/// with lanes along a line.
pub(crate) fn row_butterflies<T: FftFloat, P: Probe>(
    buffer: &mut FastBuffer<T>,
    table: &TwiddleTable<T>,
    probe: &mut P,
) {
    let g = &buffer.geometry;
    let (len, width, stride, lines) =
        (g.fft_len, g.line_width, g.padded_stride, g.lines_per_tile);
    let (rows, warp) = (g.rows_per_tile, g.warp_size);
    let cells = &mut buffer.cells;
    let mut tops = Vec::with_capacity(warp);
    let mut bottoms = Vec::with_capacity(warp);
    let mut half = 1;
    while half < len {
        let tw_step = table.resolution() / (2 * half);
        if half < width {
            for b in 0..width / 2 {
                let col = (b / half) * 2 * half + b % half;
                let w = table.entry((b % half) * tw_step);
                let mut line = 0;
                while line < lines {
                    let end = (line + warp).min(lines);
                    tops.clear();
                    bottoms.clear();
                    for l in line..end {
                        let top = l * stride + col;
                        let bot = top + half;
                        let (p, q) = butterfly(cells[top], cells[bot], w);
                        cells[top] = p;
                        cells[bot] = q;
                        if P::ACTIVE {
                            tops.push(top);
                            bottoms.push(bot);
                        }
                    }
                    if P::ACTIVE {
                        record_butterflies(probe, &tops, &bottoms);
                    }
                    line = end;
                }
            }
        } else {
            // a warp covers `width` consecutive butterflies of one group
            let gap = (half / width) * rows * stride;
            for r in 0..rows {
                for group in (0..len).step_by(2 * half) {
                    for k0 in (0..half).step_by(width) {
                        let top0 = (((group + k0) / width) * rows + r) * stride;
                        for col in 0..width {
                            let (top, bot) = (top0 + col, top0 + col + gap);
                            let w = table.entry((k0 + col) * tw_step);
                            let (p, q) = butterfly(cells[top], cells[bot], w);
                            cells[top] = p;
                            cells[bot] = q;
                        }
                        if P::ACTIVE {
                            tops.clear();
                            tops.extend(top0..top0 + width);
                            bottoms.clear();
                            bottoms.extend(top0 + gap..top0 + gap + width);
                            record_butterflies(probe, &tops, &bottoms);
                        }
                    }
                }
            }
        }
        half *= 2;
    }
    buffer.order = RowOrder::Natural;
}

/// Per-pass lookups shared by every tile of the pass: the bit-reversal
/// map of a row and the twiddles of each level, `W_{2h}^k` at `h - 1 + k`.
pub(crate) struct RowTables<T> {
    pub(crate) bitrev: Vec<usize>,
    levels: Vec<Complex<T>>,
}

impl<T: FftFloat> RowTables<T> {
    pub(crate) fn new(len: usize, table: &TwiddleTable<T>) -> Self {
        let mut levels = Vec::with_capacity(len.saturating_sub(1));
        let mut half = 1;
        while half < len {
            let step = table.resolution() / (2 * half);
            levels.extend((0..half).map(|k| table.entry(k * step)));
            half *= 2;
        }
        RowTables { bitrev: (0..len).map(|j| reverse_bits(j, len)).collect(), levels }
    }

    #[inline(always)]
    fn level(&self, half: usize) -> &[Complex<T>] {
        &self.levels[half - 1..2 * half - 1]
    }
}

#[inline(always)]
fn butterflies<T: FftFloat>(lo: &mut [Complex<T>], hi: &mut [Complex<T>], tw: &[Complex<T>]) {
    for ((a, b), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(tw) {
        let (p, q) = butterfly(*a, *b, w);
        *a = p;
        *b = q;
    }
}

/// Levels `h` and `2h` over one group of `4h`, given as its four
/// quarters. Each value goes through the same two butterflies as in two
/// separate sweeps.
#[inline(always)]
fn butterflies_pair<T: FftFloat>(q: [&mut [Complex<T>]; 4], tw: &[Complex<T>], tw2: &[Complex<T>], h: usize) {
    let [q0, q1, q2, q3] = q;
    let n = q0.len();
    let (q1, q2, q3) = (&mut q1[..n], &mut q2[..n], &mut q3[..n]);
    let (tw, lo2, hi2) = (&tw[..n], &tw2[..n], &tw2[h..h + n]);
    for k in 0..n {
        let (a0, a1) = butterfly(q0[k], q1[k], tw[k]);
        let (a2, a3) = butterfly(q2[k], q3[k], tw[k]);
        (q0[k], q2[k]) = butterfly(a0, a2, lo2[k]);
        (q1[k], q3[k]) = butterfly(a1, a3, hi2[k]);
    }
}

/// Four disjoint `width`-long slices starting at `start + i·gap`.
#[inline(always)]
fn quarters<T>(cells: &mut [T], start: usize, gap: usize, width: usize) -> [&mut [T]; 4] {
    let (a, rest) = cells[start..].split_at_mut(gap);
    let (b, rest) = rest.split_at_mut(gap);
    let (c, d) = rest.split_at_mut(gap);
    [&mut a[..width], &mut b[..width], &mut c[..width], &mut d[..width]]
}

/// Unrecorded [`row_butterflies`]: the same butterflies with the same
/// twiddles, ordered for the host cache. Levels inside a line run line by
/// line; wider levels pair whole lines. Consecutive levels are done two at
/// a time.
pub(crate) fn row_butterflies_fast<T: FftFloat>(buffer: &mut FastBuffer<T>, tables: &RowTables<T>) {
    let g = &buffer.geometry;
    let (len, width, stride, rows) = (g.fft_len, g.line_width, g.padded_stride, g.rows_per_tile);
    let cells = &mut buffer.cells;
    for line in 0..g.lines_per_tile {
        let data = &mut cells[line * stride..][..width];
        let mut half = 1;
        if width >= 4 {
            let (w1, w2) = (tables.level(1)[0], tables.level(2));
            for quad in data.chunks_exact_mut(4) {
                let (a0, a1) = butterfly(quad[0], quad[1], w1);
                let (a2, a3) = butterfly(quad[2], quad[3], w1);
                (quad[0], quad[2]) = butterfly(a0, a2, w2[0]);
                (quad[1], quad[3]) = butterfly(a1, a3, w2[1]);
            }
            half = 4;
        }
        while half < width {
            if 2 * half < width {
                let (tw, tw2) = (tables.level(half), tables.level(2 * half));
                for group in data.chunks_exact_mut(4 * half) {
                    butterflies_pair(quarters(group, 0, half, half), tw, tw2, half);
                }
                half *= 4;
            } else {
                let tw = tables.level(half);
                for pair in data.chunks_exact_mut(2 * half) {
                    let (lo, hi) = pair.split_at_mut(half);
                    butterflies(lo, hi, tw);
                }
                half *= 2;
            }
        }
    }
    let mut half = width.max(1);
    while half < len {
        let gap = (half / width) * rows * stride;
        if 2 * half < len {
            let (tw, tw2) = (tables.level(half), tables.level(2 * half));
            for r in 0..rows {
                for group in (0..len).step_by(4 * half) {
                    for k0 in (0..half).step_by(width) {
                        let top = (((group + k0) / width) * rows + r) * stride;
                        let q = quarters(cells, top, gap, width);
                        butterflies_pair(q, &tw[k0..], &tw2[k0..], half);
                    }
                }
            }
            half *= 4;
        } else {
            let tw = tables.level(half);
            for r in 0..rows {
                for group in (0..len).step_by(2 * half) {
                    for k0 in (0..half).step_by(width) {
                        let top = (((group + k0) / width) * rows + r) * stride;
                        let (head, tail) = cells.split_at_mut(top + gap);
                        butterflies(&mut head[top..top + width], &mut tail[..width], &tw[k0..k0 + width]);
                    }
                }
            }
            half *= 2;
        }
    }
    buffer.order = RowOrder::Natural;
}

fn record_butterflies<P: Probe>(probe: &mut P, tops: &[usize], bottoms: &[usize]) {
    probe.fast(tops);
    probe.fast(bottoms);
    probe.fast(tops);
    probe.fast(bottoms);
    probe.twiddles(tops.len() as u64);
}

/// Multiplies a tile of pass `stage + 1` by the twiddles that couple it to
/// passes `1..=stage`.
///
/// Element `a` of global row `g = q + groups·k` is scaled by `W_L^{a·k}`,
/// where `L` is the product of the factors of passes `1..=stage + 1`.
/// `stage` ranges over `1..p`.
pub fn apply_interstage_twiddles<T: FftFloat>(
    buffer: &mut FastBuffer<T>,
    stage: usize,
    plan: &StagePlan,
    table: &TwiddleTable<T>,
    recorder: Option<&mut AccessRecorder>,
) -> Result<()> {
    if stage == 0 || stage >= plan.pass_count() {
        return Err(invalid(format!(
            "twiddle stage {stage} outside 1..{}",
            plan.pass_count()
        )));
    }
    let next = plan.stage(stage + 1)?;
    if buffer.geometry.fft_len != next.fft_len
        || buffer.geometry.rows_per_tile != next.rows_per_tile
        || buffer.geometry.index != next.index
    {
        return Err(invalid(format!("buffer is not a tile of pass {}", stage + 1)));
    }
    table.stride_for(next.span_before * next.fft_len)?;
    match recorder {
        Some(rec) => {
            let mut tally = rec.tally();
            twiddle_tile(buffer, table, &mut tally);
            rec.absorb(tally.stats);
        }
        None => twiddle_tile(buffer, table, &mut NoProbe),
    }
    Ok(())
}

pub(crate) fn twiddle_tile<T: FftFloat, P: Probe>(
    buffer: &mut FastBuffer<T>,
    table: &TwiddleTable<T>,
    probe: &mut P,
) {
    let g = buffer.geometry.clone();
    let span = g.span_before * g.fft_len;
    let step = table.resolution() / span;
    let mask = span - 1;
    let bit_reversed = buffer.order == RowOrder::BitReversed;
    let mut offsets = Vec::with_capacity(g.warp_size);
    for col in 0..g.line_width {
        let mut line = 0;
        while line < g.lines_per_tile {
            let end = (line + g.warp_size).min(g.lines_per_tile);
            offsets.clear();
            for l in line..end {
                let (r, j) = g.cell(l, col);
                let a = if bit_reversed { reverse_bits(j, g.fft_len) } else { j };
                let k = (buffer.first_row + r) / g.groups;
                let off = l * g.padded_stride + col;
                let w = table.entry(((a * k) & mask) * step);
                buffer.cells[off] *= w;
                if P::ACTIVE {
                    offsets.push(off);
                }
            }
            if P::ACTIVE {
                probe.fast(&offsets);
                probe.fast(&offsets);
                probe.twiddles(offsets.len() as u64);
            }
            line = end;
        }
    }
}
