use crate::error::{invalid, Result};
use crate::memsim::ExecConfig;
use crate::{is_pow2, log2};

/// Default number of complex elements one tile may hold in fast memory.
pub const DEFAULT_TILE_CAPACITY: usize = 1024;

/// Whether tile lines get one extra padding word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Padding {
    Padded,
    Unpadded,
}

/// Geometry of one pass of the tiled FFT.
///
/// The pass sees the signal as `rows × fft_len`: `rows` independent
/// sequences of length `fft_len`, each transformed inside fast memory.
/// Row `g` splits as `g = q + groups·k` with `q < groups` (decimation
/// class) and `k < span_before` (spectral index already resolved by
/// earlier passes).
///
/// In fast memory a tile of `rows_per_tile` sequences is cut into lines of
/// `line_width` elements. Line `l = (j / line_width)·rows_per_tile + r`
/// holds positions `j` of the tile's row `r`, so consecutive lines belong
/// to consecutive rows and a half-warp walking down one column reaches 16
/// distinct lines. Lines are `padded_stride` words apart in each plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageGeometry {
    /// 1-based pass number.
    pub index: usize,
    pub fft_len: usize,
    pub rows: usize,
    /// Product of the factors of all earlier passes.
    pub span_before: usize,
    pub groups: usize,
    pub rows_per_tile: usize,
    pub tiles: usize,
    pub line_width: usize,
    pub lines_per_tile: usize,
    pub padded_stride: usize,
    /// Lanes per warp in the execution model.
    pub warp_size: usize,
}

impl StageGeometry {
    pub(crate) fn new(
        index: usize,
        n_total: usize,
        fft_len: usize,
        span_before: usize,
        tile_capacity: usize,
        config: &ExecConfig,
        padding: Padding,
    ) -> Self {
        let rows = n_total / fft_len;
        let rows_per_tile = (tile_capacity / fft_len).clamp(1, rows);
        let line_width = fft_len.min(config.warp_size);
        Self::with_tile(index, n_total, fft_len, span_before, rows_per_tile, line_width, config, padding)
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn with_tile(
        index: usize,
        n_total: usize,
        fft_len: usize,
        span_before: usize,
        rows_per_tile: usize,
        line_width: usize,
        config: &ExecConfig,
        padding: Padding,
    ) -> Self {
        let rows = n_total / fft_len;
        let padded_stride = match padding {
            Padding::Padded => padded_width(line_width, config.bank_count),
            Padding::Unpadded => line_width,
        };
        StageGeometry {
            index,
            fft_len,
            rows,
            span_before,
            groups: rows / span_before,
            rows_per_tile,
            tiles: rows / rows_per_tile,
            line_width,
            lines_per_tile: rows_per_tile * fft_len / line_width,
            padded_stride,
            warp_size: config.warp_size,
        }
    }

    /// Alias for `fft_len`: the width of the `rows × cols` view.
    pub fn cols(&self) -> usize {
        self.fft_len
    }

    /// Data elements per tile (padding excluded).
    pub fn tile_elements(&self) -> usize {
        self.rows_per_tile * self.fft_len
    }

    /// Words in one fast-memory plane of a tile, padding included.
    pub fn plane_words(&self) -> usize {
        self.lines_per_tile * self.padded_stride
    }

    #[inline(always)]
    pub fn line_of(&self, row: usize, pos: usize) -> usize {
        (pos / self.line_width) * self.rows_per_tile + row
    }

    /// Word offset of `(row, pos)` within a plane.
    #[inline(always)]
    pub fn fast_offset(&self, row: usize, pos: usize) -> usize {
        self.line_of(row, pos) * self.padded_stride + pos % self.line_width
    }

    /// Inverse of [`StageGeometry::fast_offset`] for the data cell at
    /// `(line, col)`.
    #[inline(always)]
    pub fn cell(&self, line: usize, col: usize) -> (usize, usize) {
        let row = line % self.rows_per_tile;
        let pos = (line / self.rows_per_tile) * self.line_width + col;
        (row, pos)
    }
}

/// Smallest stride `>= width` that is `1 mod bank_count`, so that words
/// at the same column of consecutive lines fall in consecutive banks.
/// For 32-word lines and 16 banks this is 33.
fn padded_width(width: usize, bank_count: usize) -> usize {
    if bank_count == 1 || width % bank_count == 1 {
        width
    } else {
        width.next_multiple_of(bank_count) + 1
    }
}

/// Factorization of an `N`-point transform into tile-sized passes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StagePlan {
    n_total: usize,
    tile_capacity: usize,
    factors: Vec<usize>,
    config: ExecConfig,
    padding: Padding,
    stages: Vec<StageGeometry>,
}

/// Minimal-pass plan with the default machine model and padded tiles.
pub fn make_plan(n: usize, tile_capacity: usize) -> Result<StagePlan> {
    StagePlan::new(n, tile_capacity, ExecConfig::default(), Padding::Padded)
}

impl StagePlan {
    /// Chooses the smallest pass count `p` with `tile_capacity^p ≥ n`, then
    /// spreads the `log2 n` bits over the passes so factor sizes differ by
    /// at most a factor of two (larger factors first).
    pub fn new(n: usize, tile_capacity: usize, config: ExecConfig, padding: Padding) -> Result<Self> {
        check_sizes(n, tile_capacity)?;
        config.validate()?;
        let bits = log2(n) as usize;
        let cap_bits = log2(tile_capacity) as usize;
        let passes = bits.div_ceil(cap_bits);
        let factors = (0..passes)
            .map(|i| 1usize << (bits / passes + usize::from(i < bits % passes)))
            .collect();
        Self::build(n, tile_capacity, factors, config, padding)
    }

    /// Plan with caller-chosen factors (each a power of two within the
    /// capacity; the product must be `n`).
    pub fn with_factors(
        n: usize,
        tile_capacity: usize,
        factors: Vec<usize>,
        config: ExecConfig,
        padding: Padding,
    ) -> Result<Self> {
        check_sizes(n, tile_capacity)?;
        config.validate()?;
        if factors.is_empty() {
            return Err(invalid("a plan needs at least one factor"));
        }
        if let Some(f) = factors.iter().find(|&&f| f < 2 || !is_pow2(f) || f > tile_capacity) {
            return Err(invalid(format!(
                "factor {f} must be a power of two in [2, {tile_capacity}]"
            )));
        }
        let product = factors.iter().try_fold(1usize, |acc, &f| acc.checked_mul(f));
        if product != Some(n) {
            return Err(invalid(format!("factors {factors:?} do not multiply to {n}")));
        }
        Self::build(n, tile_capacity, factors, config, padding)
    }

    fn build(
        n: usize,
        tile_capacity: usize,
        factors: Vec<usize>,
        config: ExecConfig,
        padding: Padding,
    ) -> Result<Self> {
        let mut span = 1;
        let stages = factors
            .iter()
            .enumerate()
            .map(|(i, &f)| {
                let g = StageGeometry::new(i + 1, n, f, span, tile_capacity, &config, padding);
                span *= f;
                g
            })
            .collect();
        Ok(StagePlan { n_total: n, tile_capacity, factors, config, padding, stages })
    }

    /// Same factorization with a different padding choice.
    pub fn with_padding(&self, padding: Padding) -> Self {
        Self::build(self.n_total, self.tile_capacity, self.factors.clone(), self.config, padding)
            .expect("factors already validated")
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn tile_capacity(&self) -> usize {
        self.tile_capacity
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn pass_count(&self) -> usize {
        self.factors.len()
    }

    pub fn config(&self) -> &ExecConfig {
        &self.config
    }

    pub fn padding(&self) -> Padding {
        self.padding
    }

    pub fn stages(&self) -> &[StageGeometry] {
        &self.stages
    }

    /// Geometry of pass `stage` (1-based).
    pub fn stage(&self, stage: usize) -> Result<&StageGeometry> {
        stage
            .checked_sub(1)
            .and_then(|i| self.stages.get(i))
            .ok_or_else(|| invalid(format!("stage {stage} outside 1..={}", self.pass_count())))
    }

    /// Slow-memory index read for element `a` of row `g` in pass `stage`.
    ///
    /// Pass 1 reads the natural-order input, decimated by `groups`. Later
    /// passes read the row-contiguous output of the previous pass.
    #[inline]
    pub fn gather_source(&self, stage: &StageGeometry, g: usize, a: usize) -> usize {
        let q = g % stage.groups;
        let k = g / stage.groups;
        if stage.index == 1 {
            return q + stage.groups * a;
        }
        let prev = &self.stages[stage.index - 2];
        let k_prev = k % prev.span_before;
        let c_prev = k / prev.span_before;
        (q + stage.groups * a + prev.groups * k_prev) * prev.fft_len + c_prev
    }

    /// Slow-memory index written for output position `c` of row `g`.
    ///
    /// Intermediate passes keep rows contiguous; the last pass scatters
    /// straight into natural frequency order.
    #[inline]
    pub fn store_target(&self, stage: &StageGeometry, g: usize, c: usize) -> usize {
        if stage.index == self.pass_count() {
            g + stage.rows * c
        } else {
            g * stage.fft_len + c
        }
    }

    /// `(base, step)` with `gather_source(stage, g, a) == base + step·a`.
    #[inline]
    pub(crate) fn gather_line(&self, stage: &StageGeometry, g: usize) -> (usize, usize) {
        let base = self.gather_source(stage, g, 0);
        let step = if stage.index == 1 {
            stage.groups
        } else {
            stage.groups * self.stages[stage.index - 2].fft_len
        };
        (base, step)
    }

    /// `(base, step)` with `store_target(stage, g, c) == base + step·c`.
    #[inline]
    pub(crate) fn store_line(&self, stage: &StageGeometry, g: usize) -> (usize, usize) {
        if stage.index == self.pass_count() {
            (g, stage.rows)
        } else {
            (g * stage.fft_len, 1)
        }
    }
}

fn check_sizes(n: usize, tile_capacity: usize) -> Result<()> {
    if n < 2 || !is_pow2(n) {
        return Err(invalid(format!("transform length must be a power of two >= 2, got {n}")));
    }
    if tile_capacity < 2 || !is_pow2(tile_capacity) {
        return Err(invalid(format!(
            "tile capacity must be a power of two >= 2, got {tile_capacity}"
        )));
    }
    Ok(())
}
