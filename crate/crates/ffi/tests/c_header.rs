//! Builds a small C program against the generated header and, when the
//! static library is next to the test binary, links and runs it.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include "memfft.h"
#include <math.h>
#include <stdio.h>

int main(void) {
    MemfftTable *table = NULL;
    MemfftPlan *plan = NULL;
    MemfftComplex x[256], y[256];
    MemfftStats stats;
    size_t passes = 0;
    if (memfft_table_new(256, &table) != MEMFFT_STATUS_OK) return 1;
    if (memfft_plan_new(256, 16, true, &plan) != MEMFFT_STATUS_OK) return 2;
    for (int i = 0; i < 256; i++) { x[i].re = i == 3; x[i].im = 0.0; }
    if (memfft_fft_tiled(plan, table, x, y, 256, &stats) != MEMFFT_STATUS_OK) return 3;
    memfft_plan_pass_count(plan, &passes);
    if (stats.barriers != passes || passes != 2) return 4;
    for (int k = 0; k < 256; k++) {
        double a = -2.0 * 3.14159265358979323846 * 3.0 * k / 256.0;
        if (fabs(y[k].re - cos(a)) > 1e-12 || fabs(y[k].im - sin(a)) > 1e-12) return 5;
    }
    if (memfft_table_new(3, &table) != MEMFFT_STATUS_INVALID_ARGUMENT) return 6;
    if (memfft_last_error_message()[0] == '\0') return 7;
    memfft_plan_free(plan);
    memfft_table_free(table);
    printf("ok %s\n", memfft_version());
    return 0;
}
"#;

fn compiler() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok()?.status.success().then_some(cc)
}

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let lib = exe.parent()?.parent()?.join("libmemfft_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn header_compiles_and_links() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(&src, PROGRAM).unwrap();

    let status = Command::new(&cc)
        .args(["-std=c11", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success(), "header does not compile");

    let Some(lib) = static_lib() else {
        eprintln!("static library not built; skipping link");
        return;
    };
    let exe = dir.path().join("main");
    let status = Command::new(&cc)
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "link failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
