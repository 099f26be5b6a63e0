use super::suite::{BenchRow, SuiteOptions};
use crate::error::{invalid, Error, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(invalid(format!("unknown report format {other:?} (expected csv or json)"))),
        }
    }
}

/// Context written next to a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteMetadata {
    pub sizes: Vec<usize>,
    pub tile_capacity: usize,
    pub oracle_max: usize,
    pub repetitions: u32,
    pub seed: u64,
    pub threads: usize,
    pub baseline: String,
    pub timing: String,
}

impl SuiteMetadata {
    pub fn new(sizes: &[usize], options: &SuiteOptions) -> Self {
        SuiteMetadata {
            sizes: sizes.to_vec(),
            tile_capacity: options.tile_capacity,
            oracle_max: options.oracle_max,
            repetitions: options.repetitions,
            seed: options.seed,
            threads: options.threads,
            baseline: "no external FFT library is called; the in-crate level-wise radix-2 FFT \
                       stands in for vendor FFT baselines"
                .into(),
            timing: "best of `repetitions` runs after one warm-up run; host-specific".into(),
        }
    }
}

const NO_PATH: &str = "<memory>";

/// Serializes rows. CSV has a fixed header and leaves `max_err_vs_oracle`
/// empty when absent; JSON is an array of objects with the same keys.
pub fn render_report(rows: &[BenchRow], format: ReportFormat) -> Result<String> {
    if rows.is_empty() {
        return Err(invalid("no rows to report"));
    }
    match format {
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.serialize(row).map_err(|source| Error::Csv { path: NO_PATH.into(), source })?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io { path: NO_PATH.into(), source: e.into_error() })?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(rows)
                .map_err(|source| Error::Json { path: NO_PATH.into(), source })?;
            s.push('\n');
            Ok(s)
        }
    }
}

/// Writes a report. Nothing is created when `rows` is empty.
pub fn emit_report(rows: &[BenchRow], format: ReportFormat, path: &Path) -> Result<()> {
    let text = render_report(rows, format)?;
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// Reads back a report produced by [`render_report`].
pub fn parse_report(text: &str, format: ReportFormat) -> Result<Vec<BenchRow>> {
    match format {
        ReportFormat::Csv => csv::Reader::from_reader(text.as_bytes())
            .deserialize()
            .collect::<std::result::Result<Vec<BenchRow>, _>>()
            .map_err(|source| Error::Csv { path: NO_PATH.into(), source }),
        ReportFormat::Json => {
            serde_json::from_str(text).map_err(|source| Error::Json { path: NO_PATH.into(), source })
        }
    }
}

/// Writes `meta` as JSON to `<report>.meta.json` and returns that path.
pub fn write_metadata(report: &Path, meta: &SuiteMetadata) -> Result<PathBuf> {
    let mut name = report.as_os_str().to_owned();
    name.push(".meta.json");
    let path = PathBuf::from(name);
    let mut text =
        serde_json::to_string_pretty(meta).map_err(|source| Error::Json { path: path.clone(), source })?;
    text.push('\n');
    std::fs::write(&path, text).map_err(|source| Error::Io { path: path.clone(), source })?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::Algorithm;

    fn sample() -> Vec<BenchRow> {
        vec![
            BenchRow {
                size: 16,
                algorithm: Algorithm::Levelwise,
                passes: 4,
                max_err_vs_oracle: Some(1.25e-15),
                slow_elem_accesses: 128,
                slow_transactions: 24,
                bank_conflict_cycles: 0,
                barriers: 4,
                wall_time_ns: 310,
                repetitions: 9,
            },
            BenchRow {
                size: 16384,
                algorithm: Algorithm::Tiled,
                passes: 2,
                max_err_vs_oracle: None,
                slow_elem_accesses: 65536,
                slow_transactions: 8192,
                bank_conflict_cycles: 0,
                barriers: 2,
                wall_time_ns: 91000,
                repetitions: 9,
            },
        ]
    }

    #[test]
    fn csv_layout() {
        let text = render_report(&sample()[..1], ReportFormat::Csv).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(
            lines[0],
            "size,algorithm,passes,max_err_vs_oracle,slow_elem_accesses,slow_transactions,bank_conflict_cycles,barriers,wall_time_ns,repetitions"
        );
        assert_eq!(lines[1], "16,levelwise,4,1.25e-15,128,24,0,4,310,9");
        let text = render_report(&sample(), ReportFormat::Csv).unwrap();
        assert_eq!(text.lines().nth(2).unwrap(), "16384,tiled,2,,65536,8192,0,2,91000,9");
    }

    #[test]
    fn round_trips() {
        for format in [ReportFormat::Csv, ReportFormat::Json] {
            let text = render_report(&sample(), format).unwrap();
            assert_eq!(parse_report(&text, format).unwrap(), sample());
        }
    }

    #[test]
    fn json_keys_match_csv_columns() {
        let text = render_report(&sample(), ReportFormat::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let keys: Vec<_> = v[0].as_object().unwrap().keys().cloned().collect();
        let header = render_report(&sample(), ReportFormat::Csv).unwrap();
        let mut cols: Vec<_> = header.lines().next().unwrap().split(',').map(String::from).collect();
        cols.sort();
        let mut keys = keys;
        keys.sort();
        assert_eq!(keys, cols);
        assert!(v[1]["max_err_vs_oracle"].is_null());
    }

    #[test]
    fn empty_rows_create_no_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        assert!(emit_report(&[], ReportFormat::Csv, &path).is_err());
        assert!(!path.exists());
    }

    #[test]
    fn unwritable_path_names_the_path() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("missing").join("r.csv");
        let err = emit_report(&sample(), ReportFormat::Csv, &path).unwrap_err().to_string();
        assert!(err.contains("missing"), "{err}");
    }

    #[test]
    fn formats_parse() {
        assert_eq!("CSV".parse::<ReportFormat>().unwrap(), ReportFormat::Csv);
        assert_eq!("json".parse::<ReportFormat>().unwrap(), ReportFormat::Json);
        assert!("xml".parse::<ReportFormat>().is_err());
    }

    #[test]
    fn metadata_sidecar() {
        let dir = tempfile::tempdir().unwrap();
        let report = dir.path().join("r.csv");
        let meta = SuiteMetadata::new(&[16, 64], &SuiteOptions::default());
        let path = write_metadata(&report, &meta).unwrap();
        assert!(path.ends_with("r.csv.meta.json"));
        let back: SuiteMetadata = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        assert_eq!(back, meta);
    }
}
