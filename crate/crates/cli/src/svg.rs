//! Standalone SVG scatter plots.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{CliError, Result};
use crate::report::Table;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const TICKS: usize = 5;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone, Copy)]
enum Marker {
    Circle,
    Square,
    Triangle,
    Diamond,
}

const MARKERS: [Marker; 4] = [Marker::Circle, Marker::Square, Marker::Triangle, Marker::Diamond];

fn num(v: f64) -> String {
    // Two decimals are plenty for pixel coordinates.
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn tick_label(v: f64) -> String {
    let s = if v != 0.0 && (v.abs() >= 1e5 || v.abs() < 1e-3) {
        format!("{v:.2e}")
    } else {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        let pad = if lo == 0.0 { 0.5 } else { lo.abs() * 0.1 };
        return (lo - pad, hi + pad);
    }
    let pad = (hi - lo) * 0.05;
    (lo - pad, hi + pad)
}

fn marker(out: &mut String, m: Marker, x: f64, y: f64, color: &str) {
    let r = 3.5;
    let _ = match m {
        Marker::Circle => writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{color}"/>"#,
            num(x),
            num(y),
            num(r)
        ),
        Marker::Square => writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{color}"/>"#,
            num(x - r),
            num(y - r),
            num(2.0 * r),
            num(2.0 * r)
        ),
        Marker::Triangle => writeln!(
            out,
            r#"<polygon points="{},{} {},{} {},{}" fill="{color}"/>"#,
            num(x),
            num(y - r),
            num(x - r),
            num(y + r),
            num(x + r),
            num(y + r)
        ),
        Marker::Diamond => writeln!(
            out,
            r#"<polygon points="{},{} {},{} {},{} {},{}" fill="{color}"/>"#,
            num(x),
            num(y - r),
            num(x - r),
            num(y),
            num(x),
            num(y + r),
            num(x + r),
            num(y)
        ),
    };
}

/// Renders `y` against `x`, one style per distinct value of `group`.
/// Numeric groups are ordered by value, others by first appearance.
pub fn render_svg_scatter(table: &Table, x: &str, y: &str, group: Option<&str>) -> Result<String> {
    let col = |name: &str| {
        table
            .column(name)
            .ok_or_else(|| CliError::Usage(format!("unknown column `{name}`")))
    };
    let xi = col(x)?;
    let yi = col(y)?;
    let gi = group.map(col).transpose()?;

    let parse = |row: usize, c: usize| -> Result<f64> {
        let raw = &table.rows[row][c];
        raw.parse::<f64>().map_err(|_| {
            CliError::Usage(format!(
                "row {}: `{raw}` in column `{}` is not a number",
                row + 1,
                table.headers[c]
            ))
        })
    };
    let mut points = Vec::with_capacity(table.rows.len());
    let mut groups: Vec<String> = Vec::new();
    for (r, row) in table.rows.iter().enumerate() {
        let g = gi.map(|c| row[c].clone()).unwrap_or_default();
        if !groups.contains(&g) {
            groups.push(g.clone());
        }
        points.push((parse(r, xi)?, parse(r, yi)?, g));
    }
    let numeric: Option<Vec<f64>> = groups.iter().map(|g| g.parse().ok()).collect();
    if let Some(values) = numeric {
        let mut paired: Vec<(f64, String)> = values.into_iter().zip(groups).collect();
        paired.sort_by(|a, b| a.0.total_cmp(&b.0));
        groups = paired.into_iter().map(|(_, g)| g).collect();
    }

    let (x0, x1) = range(points.iter().map(|p| p.0));
    let (y0, y1) = range(points.iter().map(|p| p.1));
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let px = |v: f64| LEFT + (v - x0) / (x1 - x0) * pw;
    let py = |v: f64| TOP + ph - (v - y0) / (y1 - y0) * ph;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="11">"#,
        W = WIDTH,
        H = HEIGHT
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        num(LEFT),
        num(TOP),
        num(pw),
        num(ph)
    );
    for t in 0..TICKS {
        let f = t as f64 / (TICKS - 1) as f64;
        let xv = x0 + f * (x1 - x0);
        let yv = y0 + f * (y1 - y0);
        let (tx, ty) = (px(xv), py(yv));
        let base = TOP + ph;
        let _ = writeln!(
            out,
            r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black"/>"#,
            num(tx),
            num(base),
            num(base + 5.0)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            num(tx),
            num(base + 18.0),
            tick_label(xv)
        );
        let _ = writeln!(
            out,
            r#"<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="black"/>"#,
            num(LEFT - 5.0),
            num(ty),
            num(LEFT)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="end" dominant-baseline="middle">{}</text>"#,
            num(LEFT - 8.0),
            num(ty),
            tick_label(yv)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle" font-size="13">{}</text>"#,
        num(LEFT + pw / 2.0),
        num(HEIGHT - 15.0),
        escape(x)
    );
    let _ = writeln!(
        out,
        r#"<text x="{0}" y="{1}" text-anchor="middle" font-size="13" transform="rotate(-90 {0} {1})">{2}</text>"#,
        num(20.0),
        num(TOP + ph / 2.0),
        escape(y)
    );

    let style = |g: &str| {
        let idx = groups.iter().position(|h| h == g).unwrap_or(0);
        (PALETTE[idx % PALETTE.len()], MARKERS[idx % MARKERS.len()])
    };
    for (xv, yv, g) in &points {
        let (color, m) = style(g);
        marker(&mut out, m, px(*xv), py(*yv), color);
    }

    if let Some(name) = group {
        let lx = LEFT + pw + 20.0;
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="12">{}</text>"#,
            num(lx),
            num(TOP + 10.0),
            escape(name)
        );
        for (i, g) in groups.iter().enumerate() {
            let ly = TOP + 30.0 + 18.0 * i as f64;
            let (color, m) = style(g);
            marker(&mut out, m, lx + 5.0, ly, color);
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" dominant-baseline="middle">{}</text>"#,
                num(lx + 16.0),
                num(ly),
                escape(g)
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn emit_svg_scatter(
    table: &Table,
    x: &str,
    y: &str,
    group: Option<&str>,
    path: &Path,
) -> Result<()> {
    let svg = render_svg_scatter(table, x, y, group)?;
    std::fs::write(path, svg).map_err(CliError::io(path))
}
