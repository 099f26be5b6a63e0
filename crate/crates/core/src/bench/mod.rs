//! Size sweep comparing the level-wise and tiled executors.
//!
//! Every size is run three ways (level-wise, tiled, brute-force DFT up to a
//! size limit). Each row carries the model counters from a recorded run,
//! the error against the DFT and a best-of-R wall time. Reports are CSV or
//! JSON; plots are standalone SVG.

mod plot;
mod report;
mod suite;

pub use plot::{emit_plot, render_plot};
pub use report::{emit_report, parse_report, render_report, write_metadata, ReportFormat, SuiteMetadata};
pub use suite::{
    parse_sizes, run_suite, Algorithm, BenchRow, PartialRun, SuiteOptions, TABLE1_SIZES,
};
