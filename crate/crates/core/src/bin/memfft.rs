//! `memfft`: size sweep of the level-wise and tiled FFTs.

use clap::Parser;
use memfft::bench::{
    emit_plot, emit_report, parse_sizes, render_report, run_suite, write_metadata, BenchRow, ReportFormat,
    SuiteMetadata, SuiteOptions,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(version, about = "Benchmark the level-wise and tiled radix-2 FFTs under a memory-traffic model")]
struct Args {
    /// Comma-separated powers of two, or `table1` for 16,64,...,65536.
    #[arg(long, default_value = "table1")]
    sizes: String,
    #[arg(long, default_value_t = memfft::tiled::DEFAULT_TILE_CAPACITY)]
    tile_capacity: usize,
    /// Largest size also checked against and timed as the O(N²) DFT.
    #[arg(long, default_value_t = 8192)]
    oracle_max: usize,
    #[arg(long, default_value = "csv")]
    format: ReportFormat,
    /// Report path; stdout when omitted. Metadata goes to `<PATH>.meta.json`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG plot path.
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Timed repetitions per measurement (best is kept; at least 5).
    #[arg(long, default_value_t = 9)]
    reps: u32,
    /// Seed for the random input signals.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

fn write_outputs(rows: &[BenchRow], args: &Args, meta: &SuiteMetadata) -> memfft::Result<()> {
    match &args.out {
        Some(path) => {
            emit_report(rows, args.format, path)?;
            write_metadata(path, meta)?;
        }
        None => print!("{}", render_report(rows, args.format)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    let sizes = match parse_sizes(&args.sizes) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("memfft: {e}");
            return ExitCode::from(2);
        }
    };
    let options = SuiteOptions {
        tile_capacity: args.tile_capacity,
        oracle_max: args.oracle_max,
        repetitions: args.reps,
        seed: args.seed,
        threads: args.threads,
    };
    let meta = SuiteMetadata::new(&sizes, &options);

    match run_suite(&sizes, &options) {
        Ok(rows) => {
            let written = write_outputs(&rows, &args, &meta).and_then(|()| match &args.plot {
                Some(path) => emit_plot(&rows, path),
                None => Ok(()),
            });
            if let Err(e) = written {
                eprintln!("memfft: {e}");
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(partial) => {
            eprintln!("memfft: {partial}");
            if !partial.rows.is_empty() {
                if let Err(e) = write_outputs(&partial.rows, &args, &meta) {
                    eprintln!("memfft: could not write partial results: {e}");
                }
            }
            ExitCode::FAILURE
        }
    }
}
