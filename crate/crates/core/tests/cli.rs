use std::process::Command;

fn memfft() -> Command {
    Command::new(env!("CARGO_BIN_EXE_memfft"))
}

#[test]
fn prints_csv_to_stdout() {
    let out = memfft().args(["--sizes", "16,64", "--reps", "5"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("size,algorithm,passes,"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn rejects_bad_sizes() {
    let out = memfft().args(["--sizes", "16,24"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = memfft().args(["--reps", "2", "--sizes", "16"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn writes_report_metadata_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("run.json");
    let plot = dir.path().join("run.svg");
    let out = memfft()
        .args(["--sizes", "32,128", "--reps", "5", "--format", "json", "--threads", "2"])
        .arg("--out")
        .arg(&report)
        .arg("--plot")
        .arg(&plot)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 6);
    assert_eq!(rows[1]["algorithm"], "tiled");
    assert!(dir.path().join("run.json.meta.json").exists());
    roxmltree::Document::parse(&std::fs::read_to_string(&plot).unwrap()).unwrap();
}
