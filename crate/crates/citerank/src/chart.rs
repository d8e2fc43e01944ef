//! Standalone SVG staircase charts and their series tables.
//!
//! Output is a pure function of the series and options: element order
//! follows series order and every coordinate is printed with two decimals,
//! so identical input gives byte-identical files.

use std::fmt::Write as _;

use citerank_core::exact::{round_half_up, to_f64};
use citerank_core::{AxisScale, Exact, StepMode, StepSeries};

use crate::error::{Error, Result};

/// Above this many vertices, consecutive vertices that land on the same
/// rendered coordinates are merged.
pub const THINNING_THRESHOLD: usize = 1_000_000;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f",
];

const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 160.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 50.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ChartOptions {
    pub width: f64,
    pub height: f64,
    pub title: Option<String>,
    pub x_label: String,
    pub y_label: String,
    /// Multiplier applied to the x coordinate of points at x = 1 (singly
    /// cited papers), drawing only.
    pub jitter: Option<f64>,
}

impl Default for ChartOptions {
    fn default() -> Self {
        Self {
            width: 720.0,
            height: 480.0,
            title: None,
            x_label: "citations".into(),
            y_label: "papers".into(),
            jitter: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub svg: String,
    pub table: String,
}

/// Decimal text for a table cell: integers as such, other values to six
/// decimals.
pub fn format_exact(value: &Exact) -> String {
    if value.is_integer() {
        value.to_integer().to_string()
    } else {
        round_half_up(value, 6)
    }
}

/// `label,c,y` rows sorted by label, then citation value.
pub fn series_table(series: &[StepSeries]) -> String {
    let mut rows: Vec<(&str, Exact, Exact)> = Vec::new();
    for s in series {
        rows.extend(s.table_rows().into_iter().map(|(c, y)| (s.label.as_str(), c, y)));
    }
    rows.sort_by(|a, b| a.0.cmp(b.0).then_with(|| a.1.cmp(&b.1)));
    let mut out = String::from("label,c,y\n");
    for (label, c, y) in rows {
        let label = if label.contains([',', '"', '\n']) {
            format!("\"{}\"", label.replace('"', "\"\""))
        } else {
            label.to_string()
        };
        let _ = writeln!(out, "{label},{},{}", format_exact(&c), format_exact(&y));
    }
    out
}

/// Corner points of the staircase in data coordinates.
fn vertices(series: &StepSeries, jitter: Option<f64>) -> Vec<(f64, f64)> {
    let pts: Vec<(f64, f64)> = series
        .points
        .iter()
        .map(|p| {
            let x = to_f64(&p.x);
            let x = match jitter {
                Some(f) if x == 1.0 => x * f,
                _ => x,
            };
            (x, to_f64(&p.y))
        })
        .collect();
    let mut out = Vec::with_capacity(pts.len() * 2 + 1);
    let Some(&first) = pts.first() else { return out };
    match series.mode {
        StepMode::After => {
            out.push(first);
            for w in pts.windows(2) {
                out.push((w[1].0, w[0].1));
                out.push(w[1]);
            }
        }
        StepMode::Before => {
            out.push((0.0, first.1));
            out.push(first);
            for w in pts.windows(2) {
                out.push((w[0].0, w[1].1));
                out.push(w[1]);
            }
        }
    }
    let mut kept: Vec<(f64, f64)> = Vec::with_capacity(out.len());
    for (x, y) in out {
        if series.y_scale == AxisScale::Log && y <= 0.0 {
            // the curve falls to minus infinity here
            break;
        }
        if series.x_scale == AxisScale::Log && x <= 0.0 {
            continue;
        }
        kept.push((x, y));
    }
    kept
}

#[derive(Debug, Clone, Copy)]
struct Axis {
    scale: AxisScale,
    lo: f64,
    hi: f64,
}

impl Axis {
    fn fit(scale: AxisScale, min: f64, max: f64) -> Self {
        match scale {
            AxisScale::Log => {
                let lo = 10f64.powi(min.log10().floor() as i32);
                let mut hi = 10f64.powi(max.log10().ceil() as i32);
                if hi <= lo {
                    hi = lo * 10.0;
                }
                Axis { scale, lo, hi }
            }
            AxisScale::Linear => {
                let lo = if min < 0.0 { -nice_ceil(-min) } else { 0.0 };
                let mut hi = nice_ceil(max.max(0.0));
                if hi <= lo {
                    hi = lo + 1.0;
                }
                Axis { scale, lo, hi }
            }
        }
    }

    /// Position in [0, 1] along the axis.
    fn unit(&self, v: f64) -> f64 {
        match self.scale {
            AxisScale::Log => (v.log10() - self.lo.log10()) / (self.hi.log10() - self.lo.log10()),
            AxisScale::Linear => (v - self.lo) / (self.hi - self.lo),
        }
    }

    fn ticks(&self) -> Vec<(f64, String)> {
        match self.scale {
            AxisScale::Log => {
                let (a, b) = (self.lo.log10().round() as i32, self.hi.log10().round() as i32);
                (a..=b)
                    .map(|k| {
                        let label = if k >= 0 {
                            10u64.pow(k as u32).to_string()
                        } else {
                            format!("1e{k}")
                        };
                        (10f64.powi(k), label)
                    })
                    .collect()
            }
            AxisScale::Linear => {
                let step = (self.hi - self.lo) / 5.0;
                (0..=5)
                    .map(|i| {
                        let v = self.lo + step * i as f64;
                        (v, format!("{}", (v * 1000.0).round() / 1000.0))
                    })
                    .collect()
            }
        }
    }
}

/// Smallest of 1, 2, 5 times a power of ten that is at least `v`.
fn nice_ceil(v: f64) -> f64 {
    if v <= 0.0 {
        return 1.0;
    }
    let base = 10f64.powi(v.log10().floor() as i32);
    for m in [1.0, 2.0, 5.0, 10.0] {
        if m * base >= v {
            return m * base;
        }
    }
    10.0 * base
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn scale_name(scale: AxisScale) -> &'static str {
    match scale {
        AxisScale::Linear => "linear",
        AxisScale::Log => "log",
    }
}

pub fn render_chart(series: &[StepSeries], options: &ChartOptions) -> Result<Chart> {
    let first = series.first().ok_or_else(|| Error::Usage("no series to draw".into()))?;
    if series
        .iter()
        .any(|s| s.x_scale != first.x_scale || s.y_scale != first.y_scale || s.mode != first.mode)
    {
        return Err(Error::Usage("all series of a chart must share axis scales".into()));
    }
    if let Some(f) = options.jitter {
        if !(f.is_finite() && f > 0.0) {
            return Err(Error::Usage(format!("jitter must be a positive number, got {f}")));
        }
    }

    let mut paths: Vec<Vec<(f64, f64)>> = series.iter().map(|s| vertices(s, options.jitter)).collect();
    let all = || paths.iter().flatten();
    let (mut x_min, mut x_max, mut y_min, mut y_max) =
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all() {
        x_min = x_min.min(x);
        x_max = x_max.max(x);
        y_min = y_min.min(y);
        y_max = y_max.max(y);
    }
    if !x_min.is_finite() {
        (x_min, x_max, y_min, y_max) = (1.0, 10.0, 1.0, 10.0);
    }
    let x_axis = Axis::fit(first.x_scale, x_min, x_max);
    let y_axis = Axis::fit(first.y_scale, y_min, y_max);

    let plot_w = options.width - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = options.height - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |x: f64| MARGIN_LEFT + x_axis.unit(x) * plot_w;
    let py = |y: f64| MARGIN_TOP + (1.0 - y_axis.unit(y)) * plot_h;

    let total: usize = paths.iter().map(Vec::len).sum();
    let thin = total > THINNING_THRESHOLD;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#,
        w = options.width,
        h = options.height
    );
    let _ = writeln!(svg, "<metadata>");
    for s in series {
        let _ = writeln!(
            svg,
            r#"  <series label="{}" points="{}" x-scale="{}" y-scale="{}"/>"#,
            escape(&s.label),
            s.points.len(),
            scale_name(s.x_scale),
            scale_name(s.y_scale)
        );
    }
    if let Some(f) = options.jitter {
        let _ = writeln!(svg, r#"  <jitter x1-factor="{f}"/>"#);
    }
    let _ = writeln!(svg, "</metadata>");
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#,
        options.width, options.height
    );
    if let Some(title) = &options.title {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="20" text-anchor="middle" font-size="14">{}</text>"#,
            MARGIN_LEFT + plot_w / 2.0,
            escape(title)
        );
    }

    // axes
    let (left, right, top, bottom) = (MARGIN_LEFT, MARGIN_LEFT + plot_w, MARGIN_TOP, MARGIN_TOP + plot_h);
    let _ = writeln!(svg, r#"<g stroke="black" fill="none">"#);
    let _ = writeln!(
        svg,
        r#"  <rect x="{left:.2}" y="{top:.2}" width="{plot_w:.2}" height="{plot_h:.2}"/>"#
    );
    for (v, _) in x_axis.ticks() {
        let x = px(v);
        let _ = writeln!(
            svg,
            r#"  <line x1="{x:.2}" y1="{bottom:.2}" x2="{x:.2}" y2="{:.2}"/>"#,
            bottom + 5.0
        );
    }
    for (v, _) in y_axis.ticks() {
        let y = py(v);
        let _ = writeln!(
            svg,
            r#"  <line x1="{:.2}" y1="{y:.2}" x2="{left:.2}" y2="{y:.2}"/>"#,
            left - 5.0
        );
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, r#"<g fill="black">"#);
    for (v, label) in x_axis.ticks() {
        let _ = writeln!(
            svg,
            r#"  <text x="{:.2}" y="{:.2}" text-anchor="middle">{label}</text>"#,
            px(v),
            bottom + 18.0
        );
    }
    for (v, label) in y_axis.ticks() {
        let _ = writeln!(
            svg,
            r#"  <text x="{:.2}" y="{:.2}" text-anchor="end">{label}</text>"#,
            left - 8.0,
            py(v) + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"  <text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        left + plot_w / 2.0,
        bottom + 38.0,
        escape(&options.x_label)
    );
    let _ = writeln!(
        svg,
        r#"  <text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
        top + plot_h / 2.0,
        top + plot_h / 2.0,
        escape(&options.y_label)
    );
    let _ = writeln!(svg, "</g>");

    // curves
    for (i, (s, path)) in series.iter().zip(paths.iter_mut()).enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut coords: Vec<String> = path
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        if thin {
            coords.dedup();
        }
        if coords.is_empty() {
            continue;
        }
        let _ = writeln!(
            svg,
            r#"<path data-label="{}" fill="none" stroke="{color}" stroke-width="1.5" d="M{}"/>"#,
            escape(&s.label),
            coords.join(" L")
        );
    }

    // legend
    let _ = writeln!(svg, r#"<g font-size="12">"#);
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = top + 10.0 + 18.0 * i as f64;
        let x = right + 12.0;
        let _ = writeln!(
            svg,
            r#"  <line x1="{x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="2"/>"#,
            x + 20.0
        );
        let _ = writeln!(
            svg,
            r#"  <text x="{:.2}" y="{:.2}">{}</text>"#,
            x + 26.0,
            y + 4.0,
            escape(&s.label)
        );
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, "</svg>");

    Ok(Chart {
        svg,
        table: series_table(series),
    })
}
