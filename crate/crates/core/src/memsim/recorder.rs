use super::model::{count_segments, degree};
use super::{AccessStats, ExecConfig};

/// Sink for the address streams an executor generates.
///
/// Executors are generic over the probe so that the unrecorded path
/// compiles the bookkeeping away.
pub(crate) trait Probe {
    const ACTIVE: bool;

    /// One warp reading the given slow-memory element addresses.
    fn slow_read(&mut self, addresses: &[usize]);
    /// One warp writing the given slow-memory element addresses.
    fn slow_write(&mut self, addresses: &[usize]);
    /// One warp touching fast memory at the given per-plane word offsets.
    fn fast(&mut self, offsets: &[usize]);
    fn twiddles(&mut self, count: u64);
}

pub(crate) struct NoProbe;

impl Probe for NoProbe {
    const ACTIVE: bool = false;

    #[inline(always)]
    fn slow_read(&mut self, _: &[usize]) {}
    #[inline(always)]
    fn slow_write(&mut self, _: &[usize]) {}
    #[inline(always)]
    fn fast(&mut self, _: &[usize]) {}
    #[inline(always)]
    fn twiddles(&mut self, _: u64) {}
}

/// Worker-local counters, merged into an [`AccessRecorder`] at a barrier.
#[derive(Clone, Debug)]
pub(crate) struct Tally {
    pub(crate) config: ExecConfig,
    pub(crate) stats: AccessStats,
}

impl Tally {
    pub(crate) fn new(config: ExecConfig) -> Self {
        Tally { config, stats: AccessStats::default() }
    }
}

impl Probe for Tally {
    const ACTIVE: bool = true;

    fn slow_read(&mut self, addresses: &[usize]) {
        self.stats.slow_elem_reads += addresses.len() as u64;
        self.stats.slow_transactions += count_segments(addresses, &self.config);
    }

    fn slow_write(&mut self, addresses: &[usize]) {
        self.stats.slow_elem_writes += addresses.len() as u64;
        self.stats.slow_transactions += count_segments(addresses, &self.config);
    }

    fn fast(&mut self, offsets: &[usize]) {
        self.stats.fast_accesses += offsets.len() as u64;
        for half in offsets.chunks(self.config.half_warp) {
            let d = degree(half, self.config.bank_count) as u64;
            // the imaginary plane sits at a constant offset and repeats the pattern
            self.stats.bank_conflict_cycles += 2 * d.saturating_sub(1);
        }
    }

    fn twiddles(&mut self, count: u64) {
        self.stats.twiddle_fetches += count;
    }
}

/// Collects traffic counters while an executor runs.
///
/// Counters are grouped per stage (one level of the level-wise FFT, one
/// pass of the tiled FFT); [`AccessRecorder::stats`] is their sum. The
/// bit-reversal sweep of the level-wise FFT is kept apart in
/// [`AccessRecorder::reorder`].
#[derive(Clone, Debug, Default)]
pub struct AccessRecorder {
    config: ExecConfig,
    stats: AccessStats,
    stages: Vec<AccessStats>,
    reorder: AccessStats,
}

impl AccessRecorder {
    pub fn new(config: ExecConfig) -> Self {
        AccessRecorder { config, ..Default::default() }
    }

    pub fn config(&self) -> &ExecConfig {
        &self.config
    }

    pub fn stats(&self) -> AccessStats {
        self.stats
    }

    pub fn stages(&self) -> &[AccessStats] {
        &self.stages
    }

    pub fn reorder(&self) -> AccessStats {
        self.reorder
    }

    pub fn begin_stage(&mut self) {
        self.stages.push(AccessStats::default());
    }

    /// Adds worker counters to the current stage.
    pub fn absorb(&mut self, part: AccessStats) {
        if self.stages.is_empty() {
            self.begin_stage();
        }
        let last = self.stages.len() - 1;
        self.stages[last] += part;
        self.stats += part;
    }

    pub fn barrier(&mut self) {
        self.absorb(AccessStats { barriers: 1, ..Default::default() });
    }

    pub(crate) fn absorb_reorder(&mut self, part: AccessStats) {
        self.reorder += part;
    }

    pub(crate) fn tally(&self) -> Tally {
        Tally::new(self.config)
    }

    pub fn reset(&mut self) {
        *self = AccessRecorder::new(self.config);
    }
}
