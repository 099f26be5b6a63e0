//! Deterministic model of a two-level GPU-style memory hierarchy.
//!
//! Slow memory stands in for global memory: a warp's element addresses are
//! grouped into aligned segments and each touched segment costs one
//! transaction. Fast memory stands in for banked shared memory: complex
//! values are split into a real and an imaginary word plane, a half-warp's
//! word addresses are mapped to `address mod bank_count`, and the access is
//! serialized by the largest number of distinct addresses sharing a bank.

mod account;
mod config;
mod model;
mod recorder;
mod stats;

pub use account::{
    account_bit_reverse, account_levelwise, account_levelwise_levels, account_oracle,
    account_tiled, account_tiled_stages, reduction_ratio,
};
pub use config::ExecConfig;
pub use model::{bank_conflict_degree, coalesced_transactions};
pub use recorder::AccessRecorder;
pub(crate) use recorder::{NoProbe, Probe, Tally};
pub use stats::AccessStats;
