// SPDX-License-Identifier: Apache-2.0

//! Minimal standalone SVG charts.

use std::fmt::Write as _;
use std::path::Path;

use crate::{io_error, CliError, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 56.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn new(title: &str, x_label: &str, y_label: &str, points: Vec<(f64, f64)>) -> Self {
        Self {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            points,
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

/// The chart as SVG text: one polyline with a marker per point.
pub fn render_svg(series: &Series) -> Result<String> {
    if series.points.is_empty() {
        return Err(CliError::Usage(format!("cannot plot the empty series {:?}", series.title)));
    }
    if series.points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(CliError::Usage(format!("series {:?} has non-finite points", series.title)));
    }
    let (x0, x1) = range(series.points.iter().map(|p| p.0));
    let (y0, y1) = range(series.points.iter().map(|p| p.1));
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
        WIDTH / 2.0,
        escape(&series.title)
    );
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        svg,
        r#"<path d="M{left} {top} L{left} {bottom} L{right} {bottom}" fill="none" stroke="black"/>"#
    );
    for (value, x, y, anchor) in [
        (x0, left, bottom + 18.0, "start"),
        (x1, right, bottom + 18.0, "end"),
        (y0, left - 6.0, bottom, "end"),
        (y1, left - 6.0, top + 4.0, "end"),
    ] {
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{y}" text-anchor="{anchor}" font-family="sans-serif" font-size="11">{value:.4e}</text>"#
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0,
        escape(&series.x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="14" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12" transform="rotate(-90 14 {})">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(&series.y_label)
    );
    let coords: Vec<String> = series
        .points
        .iter()
        .map(|&(x, y)| format!("{:.3},{:.3}", sx(x), sy(y)))
        .collect();
    let _ = writeln!(
        svg,
        r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="1.5"/>"#,
        coords.join(" ")
    );
    for &(x, y) in &series.points {
        let _ = writeln!(svg, r#"<circle cx="{:.3}" cy="{:.3}" r="2.5" fill="steelblue"/>"#, sx(x), sy(y));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Writes the chart; nothing is written for an empty series.
pub fn emit_plot(series: &Series, path: &Path) -> Result<()> {
    let svg = render_svg(series)?;
    std::fs::write(path, svg).map_err(|e| io_error(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_series_is_rejected() {
        let s = Series::new("empty", "x", "y", vec![]);
        assert!(render_svg(&s).is_err());
    }

    #[test]
    fn one_polyline_and_deterministic() {
        let s = Series::new("a < b", "step", "L1", vec![(1.0, 3.0), (2.0, 1.0), (3.0, 0.5)]);
        let a = render_svg(&s).unwrap();
        assert_eq!(a.matches("<polyline").count(), 1);
        assert_eq!(a.matches("<circle").count(), 3);
        assert!(a.contains("a &lt; b"));
        assert_eq!(a, render_svg(&s).unwrap());
    }

    #[test]
    fn single_point_has_a_finite_scale() {
        let s = Series::new("one", "x", "y", vec![(1.0, 1.0)]);
        assert!(!render_svg(&s).unwrap().contains("NaN"));
    }
}
