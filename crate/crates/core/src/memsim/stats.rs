use serde::{Deserialize, Serialize};
use std::iter::Sum;
use std::ops::{Add, AddAssign};

/// Memory-traffic counters.
///
/// `bank_conflict_cycles` is the number of extra serialized fast-memory
/// word accesses: each half-warp access of conflict degree `d` adds `d - 1`
/// per word plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AccessStats {
    pub slow_elem_reads: u64,
    pub slow_elem_writes: u64,
    pub slow_transactions: u64,
    pub fast_accesses: u64,
    pub bank_conflict_cycles: u64,
    pub barriers: u64,
    pub twiddle_fetches: u64,
}

impl AccessStats {
    pub fn slow_elem_accesses(&self) -> u64 {
        self.slow_elem_reads + self.slow_elem_writes
    }
}

impl AddAssign for AccessStats {
    fn add_assign(&mut self, o: Self) {
        self.slow_elem_reads += o.slow_elem_reads;
        self.slow_elem_writes += o.slow_elem_writes;
        self.slow_transactions += o.slow_transactions;
        self.fast_accesses += o.fast_accesses;
        self.bank_conflict_cycles += o.bank_conflict_cycles;
        self.barriers += o.barriers;
        self.twiddle_fetches += o.twiddle_fetches;
    }
}

impl Add for AccessStats {
    type Output = AccessStats;

    fn add(mut self, o: Self) -> Self {
        self += o;
        self
    }
}

impl Sum for AccessStats {
    fn sum<I: Iterator<Item = AccessStats>>(iter: I) -> Self {
        iter.fold(AccessStats::default(), Add::add)
    }
}
