use super::suite::{Algorithm, BenchRow};
use crate::error::{invalid, Error, Result};
use std::collections::BTreeSet;
use std::fmt::Write;
use std::path::Path;

const WIDTH: f64 = 720.0;
const CHART_HEIGHT: f64 = 320.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 130.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 50.0;

fn color(a: Algorithm) -> &'static str {
    match a {
        Algorithm::Levelwise => "#d62728",
        Algorithm::Tiled => "#1f77b4",
        Algorithm::Oracle => "#7f7f7f",
    }
}

struct Chart {
    key: &'static str,
    title: &'static str,
    value: fn(&BenchRow) -> u64,
}

const CHARTS: [Chart; 2] = [
    Chart { key: "wall_time_ns", title: "Wall time (ns, best of R)", value: |r| r.wall_time_ns },
    Chart { key: "slow_elem_accesses", title: "Slow-memory element accesses", value: |r| r.slow_elem_accesses },
];

/// Renders two stacked log-log line charts (wall time, slow accesses)
/// with one polyline per algorithm. Needs at least two distinct sizes.
pub fn render_plot(rows: &[BenchRow]) -> Result<String> {
    let sizes: BTreeSet<usize> = rows.iter().map(|r| r.size).collect();
    if sizes.len() < 2 {
        return Err(invalid(format!("a plot needs rows for at least 2 sizes, got {}", sizes.len())));
    }
    let algorithms: BTreeSet<Algorithm> = rows.iter().map(|r| r.algorithm).collect();
    let height = CHART_HEIGHT * CHARTS.len() as f64;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, chart) in CHARTS.iter().enumerate() {
        draw_chart(&mut svg, chart, i as f64 * CHART_HEIGHT, rows, &sizes, &algorithms);
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn emit_plot(rows: &[BenchRow], path: &Path) -> Result<()> {
    let svg = render_plot(rows)?;
    std::fs::write(path, svg).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn draw_chart(
    svg: &mut String,
    chart: &Chart,
    top: f64,
    rows: &[BenchRow],
    sizes: &BTreeSet<usize>,
    algorithms: &BTreeSet<Algorithm>,
) {
    let (x0, x1) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT);
    let (y0, y1) = (top + CHART_HEIGHT - MARGIN_BOTTOM, top + MARGIN_TOP);
    let lx = |n: usize| (n as f64).log2();
    let (lmin, lmax) = (lx(*sizes.first().unwrap()), lx(*sizes.last().unwrap()));
    let px = |n: usize| x0 + (lx(n) - lmin) / (lmax - lmin) * (x1 - x0);

    let ly = |v: u64| (v.max(1) as f64).log10();
    let values = rows.iter().map(|r| ly((chart.value)(r)));
    let vmin = values.clone().fold(f64::INFINITY, f64::min).floor();
    let mut vmax = values.fold(f64::NEG_INFINITY, f64::max).ceil();
    if vmax <= vmin {
        vmax = vmin + 1.0;
    }
    let py = |v: u64| y0 - (ly(v) - vmin) / (vmax - vmin) * (y0 - y1);

    let _ = writeln!(svg, r#"<g class="chart" data-chart="{}">"#, chart.key);
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="14">{}</text>"#,
        (x0 + x1) / 2.0,
        top + 22.0,
        chart.title
    );
    let _ = writeln!(svg, r#"<line x1="{x0:.1}" y1="{y0:.1}" x2="{x1:.1}" y2="{y0:.1}" stroke="black"/>"#);
    let _ = writeln!(svg, r#"<line x1="{x0:.1}" y1="{y0:.1}" x2="{x0:.1}" y2="{y1:.1}" stroke="black"/>"#);
    for &n in sizes {
        let x = px(n);
        let _ = writeln!(svg, r#"<line x1="{x:.1}" y1="{y0:.1}" x2="{x:.1}" y2="{:.1}" stroke="black"/>"#, y0 + 5.0);
        let _ = writeln!(
            svg,
            r#"<text class="xtick" x="{x:.1}" y="{:.1}" text-anchor="middle">{n}</text>"#,
            y0 + 18.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">N (log scale)</text>"#,
        (x0 + x1) / 2.0,
        y0 + 38.0
    );
    for e in vmin as i32..=vmax as i32 {
        let y = y0 - (e as f64 - vmin) / (vmax - vmin) * (y0 - y1);
        let _ = writeln!(svg, r##"<line x1="{x0:.1}" y1="{y:.1}" x2="{x1:.1}" y2="{y:.1}" stroke="#e0e0e0"/>"##);
        let _ = writeln!(
            svg,
            r#"<text class="ytick" x="{:.1}" y="{:.1}" text-anchor="end">1e{e}</text>"#,
            x0 - 6.0,
            y + 4.0
        );
    }
    for (i, &alg) in algorithms.iter().enumerate() {
        let mut points: Vec<&BenchRow> = rows.iter().filter(|r| r.algorithm == alg).collect();
        points.sort_by_key(|r| r.size);
        let coords: Vec<String> =
            points.iter().map(|r| format!("{:.1},{:.1}", px(r.size), py((chart.value)(r)))).collect();
        let _ = writeln!(
            svg,
            r#"<polyline class="series" data-algorithm="{alg}" fill="none" stroke="{}" stroke-width="2" points="{}"/>"#,
            color(alg),
            coords.join(" ")
        );
        let ly = y1 + 16.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{}" stroke-width="2"/>"#,
            x1 + 12.0,
            x1 + 32.0,
            color(alg)
        );
        let _ = writeln!(svg, r#"<text x="{:.1}" y="{:.1}">{alg}</text>"#, x1 + 38.0, ly + 4.0);
    }
    svg.push_str("</g>\n");
}
