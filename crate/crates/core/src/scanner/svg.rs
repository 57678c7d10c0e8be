//! Minimal SVG line plots of scan tables.

use std::fmt::Write as _;

use super::csv::round_to_csv;
use super::{RowStatus, ScanError, ScanTable};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

fn meta<'a>(table: &'a ScanTable, key: &str) -> Option<&'a str> {
    table
        .metadata
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
}

fn x_label(axis: &str) -> &'static str {
    match axis {
        "B" => "B",
        "n" => "n",
        "p0" => "p0 / (beta hbar)",
        _ => "axis",
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders the successful rows, one polyline per `kind`.
///
/// Values are rounded to their CSV representation first, so a table read
/// back from its CSV renders to the same bytes.
pub fn to_svg_string(table: &ScanTable) -> Result<String, ScanError> {
    let axis = meta(table, "axis").unwrap_or("axis");
    let log_x = axis == "B";
    let mut series: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    for row in table.rows.iter().filter(|r| r.status == RowStatus::Ok) {
        let (x, y) = (round_to_csv(row.axis_value), round_to_csv(row.v_bar_over_c));
        if !x.is_finite() || !y.is_finite() || (log_x && x <= 0.0) {
            continue;
        }
        let x = if log_x { x.log10() } else { x };
        match series.iter_mut().find(|(k, _)| *k == row.kind) {
            Some((_, pts)) => pts.push((x, y)),
            None => series.push((row.kind.clone(), vec![(x, y)])),
        }
    }
    if series.is_empty() {
        return Err(ScanError::Usage(
            "nothing to plot: no successful rows".into(),
        ));
    }
    let pts = series.iter().flat_map(|(_, p)| p.iter());
    let (mut x0, mut x1, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let y0 = 0.0f64.min(
        series
            .iter()
            .flat_map(|(_, p)| p.iter().map(|q| q.1))
            .fold(f64::INFINITY, f64::min),
    );
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 {
        y1 = y0 + 1.0;
    }
    let y1 = y1 * 1.05;
    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + ph - (y - y0) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    if let Some(fig) = meta(table, "figure") {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
            LEFT + pw / 2.0,
            escape(fig)
        );
    }
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for i in 0..=4 {
        let t = f64::from(i) / 4.0;
        let (xv, yv) = (x0 + t * (x1 - x0), y0 + t * (y1 - y0));
        let xt = if log_x {
            format!("1e{xv:.2}")
        } else {
            format!("{xv:.3}")
        };
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{xt}</text>"#,
            sx(xv),
            TOP + ph + 18.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{yv:.4}</text>"#,
            LEFT - 6.0,
            sy(yv) + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 16.0,
        escape(x_label(axis))
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">v / c</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0
    );
    for (i, (kind, pts)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let path: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            path.join(" ")
        );
        for &(x, y) in pts {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{color}"/>"#,
                sx(x),
                sy(y)
            );
        }
        let ly = TOP + 16.0 * i as f64 + 8.0;
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#,
            WIDTH - RIGHT + 10.0,
            WIDTH - RIGHT + 30.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            WIDTH - RIGHT + 34.0,
            ly + 4.0,
            escape(kind)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
