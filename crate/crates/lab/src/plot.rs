//! Self-contained log-log SVG of max load against node count.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Result};
use congestion_core::analysis::{fit_scaling, ScalingFit};

use crate::fit::read_points;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
const FIT: &str = "#1f77b4";
const GUIDE_COLORS: [&str; 4] = ["#d62728", "#2ca02c", "#9467bd", "#8c564b"];

struct Axes {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Axes {
    /// Log-space bounds padded out to whole decades.
    fn new(points: &[(f64, f64)]) -> Self {
        let lx = points.iter().map(|p| p.0.log10());
        let ly = points.iter().map(|p| p.1.log10());
        let (x0, x1) = lx.fold((f64::INFINITY, f64::NEG_INFINITY), |a, v| {
            (a.0.min(v), a.1.max(v))
        });
        let (y0, y1) = ly.fold((f64::INFINITY, f64::NEG_INFINITY), |a, v| {
            (a.0.min(v), a.1.max(v))
        });
        Axes {
            x0: x0.floor(),
            x1: x1.ceil().max(x0.floor() + 1.0),
            y0: y0.floor(),
            y1: y1.ceil().max(y0.floor() + 1.0),
        }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x.log10() - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y.log10() - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2.0 * MARGIN)
    }
}

/// Renders the plot; `None` fit when there is a single point.
pub fn render_svg(points: &[(f64, f64)], overlays: &[f64]) -> Result<(String, Option<ScalingFit>)> {
    if points.is_empty() {
        bail!("nothing to plot");
    }
    let fit = if points.len() >= 2 {
        Some(fit_scaling(points)?)
    } else {
        None
    };
    let ax = Axes::new(points);
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )?;
    writeln!(
        s,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    )?;
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    writeln!(
        s,
        r#"<path d="M{left} {top}V{bottom}H{right}" fill="none" stroke="black"/>"#
    )?;
    for d in ax.x0 as i32..=ax.x1 as i32 {
        let x = ax.px(10f64.powi(d));
        writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{bottom}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#,
            bottom + 5.0
        )?;
        writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">1e{d}</text>"#,
            bottom + 20.0
        )?;
    }
    for d in ax.y0 as i32..=ax.y1 as i32 {
        let y = ax.py(10f64.powi(d));
        writeln!(
            s,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{left}" y2="{y:.2}" stroke="black"/>"#,
            left - 5.0
        )?;
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">1e{d}</text>"#,
            left - 8.0,
            y + 4.0
        )?;
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">N</text>"#,
        WIDTH / 2.0,
        HEIGHT - 15.0
    )?;
    writeln!(
        s,
        r#"<text x="15" y="{:.2}" text-anchor="middle" transform="rotate(-90 15 {:.2})">max load</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    )?;

    let by_x = |a: &&(f64, f64), b: &&(f64, f64)| a.0.total_cmp(&b.0);
    let first = *points.iter().min_by(by_x).unwrap();
    let last = *points.iter().max_by(by_x).unwrap();
    for (i, &slope) in overlays.iter().enumerate() {
        // anchored at the smallest instance
        let y = |x: f64| first.1 * (x / first.0).powf(slope);
        let color = GUIDE_COLORS[i % GUIDE_COLORS.len()];
        writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-dasharray="6 4"/>"#,
            ax.px(first.0),
            ax.py(y(first.0)),
            ax.px(last.0),
            ax.py(y(last.0))
        )?;
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" fill="{color}">N^{slope:.3}</text>"#,
            right - 70.0,
            top + 20.0 + 16.0 * (i as f64 + 1.0)
        )?;
    }
    if let Some(f) = &fit {
        let (xa, xb) = (first.0, last.0);
        writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{FIT}"/>"#,
            ax.px(xa),
            ax.py(f.predict(xa)),
            ax.px(xb),
            ax.py(f.predict(xb))
        )?;
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" fill="{FIT}">slope = {:.3}</text>"#,
            left + 10.0,
            top + 15.0,
            f.slope
        )?;
    }
    for &(x, y) in points {
        writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="{FIT}"/>"#,
            ax.px(x),
            ax.py(y)
        )?;
    }
    writeln!(s, "</svg>")?;
    Ok((s, fit))
}

/// Plots `(N, max_load)` from an experiment CSV.
pub fn emit_plot(csv_path: &Path, svg_path: &Path, overlays: &[f64]) -> Result<Option<ScalingFit>> {
    let points = read_points(csv_path, "N", "max_load")?;
    let (svg, fit) = render_svg(&points, overlays)?;
    if let Some(dir) = svg_path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(svg_path, svg)?;
    Ok(fit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_is_an_error() {
        assert!(render_svg(&[], &[]).is_err());
    }

    #[test]
    fn single_point_has_no_fit_line() {
        let (svg, fit) = render_svg(&[(100.0, 50.0)], &[]).unwrap();
        assert!(fit.is_none());
        assert!(!svg.contains("slope ="));
        assert_eq!(svg.matches("<circle").count(), 1);
    }

    #[test]
    fn label_and_overlays() {
        let pts = [(10.0, 100.0), (100.0, 10_000.0), (1000.0, 1e6)];
        let (svg, fit) = render_svg(&pts, &[1.5, 2.0]).unwrap();
        assert!((fit.unwrap().slope - 2.0).abs() < 1e-12);
        assert!(svg.contains("slope = 2.000"));
        assert!(svg.contains("N^1.500"));
        assert_eq!(svg, render_svg(&pts, &[1.5, 2.0]).unwrap().0);
    }
}
