//! CSV and minimal SVG writers.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{CliError, Result};

/// 17 significant digits, enough for byte-level determinism of the CSVs.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct Csv {
    buf: String,
    columns: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Self {
            buf: format!("{}\n", header.join(",")),
            columns: header.len(),
        }
    }

    pub fn row(&mut self, fields: &[String]) {
        debug_assert_eq!(fields.len(), self.columns);
        self.buf.push_str(&fields.join(","));
        self.buf.push('\n');
    }

    pub fn as_str(&self) -> &str {
        &self.buf
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_file(path, &self.buf)
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        }
    }
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 56.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"];

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn fit(points: impl Iterator<Item = (f64, f64)>) -> Self {
        let mut f = Frame {
            x0: f64::INFINITY,
            x1: f64::NEG_INFINITY,
            y0: f64::INFINITY,
            y1: f64::NEG_INFINITY,
        };
        for (x, y) in points {
            f.x0 = f.x0.min(x);
            f.x1 = f.x1.max(x);
            f.y0 = f.y0.min(y);
            f.y1 = f.y1.max(y);
        }
        if !(f.x1 > f.x0) {
            f.x1 = f.x0 + 1.0;
        }
        if !(f.y1 > f.y0) {
            f.y1 = f.y0 + 1.0;
        }
        f
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2.0 * MARGIN)
    }

    fn axes(&self, out: &mut String, xlabel: &str, ylabel: &str) {
        let (l, r) = (MARGIN, WIDTH - MARGIN);
        let (t, b) = (MARGIN, HEIGHT - MARGIN);
        let _ = writeln!(
            out,
            r#"<rect x="{l}" y="{t}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            r - l,
            b - t
        );
        let _ = writeln!(
            out,
            r#"<text x="{l}" y="{}" font-size="11">{:.3}</text><text x="{}" y="{}" font-size="11" text-anchor="end">{:.3}</text>"#,
            b + 16.0,
            self.x0,
            r,
            b + 16.0,
            self.x1
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{b}" font-size="11" text-anchor="end">{:.3}</text><text x="{}" y="{}" font-size="11" text-anchor="end">{:.3}</text>"#,
            l - 4.0,
            self.y0,
            l - 4.0,
            t + 10.0,
            self.y1
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="13" text-anchor="middle">{xlabel}</text>"#,
            WIDTH / 2.0,
            HEIGHT - 12.0
        );
        let _ = writeln!(
            out,
            r#"<text x="16" y="{}" font-size="13" text-anchor="middle" transform="rotate(-90 16 {})">{ylabel}</text>"#,
            HEIGHT / 2.0,
            HEIGHT / 2.0
        );
    }
}

fn header() -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    )
}

/// A named polyline, optionally dashed.
pub struct Series<'a> {
    pub label: String,
    pub points: &'a [(f64, f64)],
    pub dashed: bool,
    pub color: usize,
}

pub fn line_plot(series: &[Series<'_>], xlabel: &str, ylabel: &str) -> String {
    let frame = Frame::fit(series.iter().flat_map(|s| s.points.iter().copied()));
    let mut out = header();
    frame.axes(&mut out, xlabel, ylabel);
    for (k, s) in series.iter().enumerate() {
        let color = PALETTE[s.color % PALETTE.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", frame.px(x), frame.py(y)))
            .collect();
        let dash = if s.dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{}"/>"#,
            pts.join(" ")
        );
        let ly = MARGIN + 14.0 + 16.0 * k as f64;
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}"{dash}/><text x="{}" y="{}" font-size="11">{}</text>"#,
            WIDTH - MARGIN - 150.0,
            WIDTH - MARGIN - 126.0,
            WIDTH - MARGIN - 120.0,
            ly + 4.0,
            s.label
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Scatter plot with the `y = x` reference line.
pub fn scatter_with_diagonal(points: &[(f64, f64)], xlabel: &str, ylabel: &str) -> String {
    let mut frame = Frame::fit(points.iter().copied());
    let lo = frame.x0.min(frame.y0);
    let hi = frame.x1.max(frame.y1);
    frame = Frame { x0: lo, x1: hi, y0: lo, y1: hi };
    let mut out = header();
    frame.axes(&mut out, xlabel, ylabel);
    for &(x, y) in points {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="1.5" fill="{}" fill-opacity="0.6"/>"#,
            frame.px(x),
            frame.py(y),
            PALETTE[0]
        );
    }
    let _ = writeln!(
        out,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="red" stroke-width="1.5"/>"#,
        frame.px(lo),
        frame.py(lo),
        frame.px(hi),
        frame.py(hi)
    );
    out.push_str("</svg>\n");
    out
}
