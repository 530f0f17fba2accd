//! Log-log SVG of `err_total` against α.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use zakharov::limitlab::fit_loglog;

const W: f64 = 640.0;
const H: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

/// `(alpha, err_total)` pairs from a sweep CSV.
pub fn read_points(path: &Path) -> Result<Vec<(f64, f64)>> {
    let mut r =
        csv::Reader::from_path(path).with_context(|| format!("opening {}", path.display()))?;
    let headers = r.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .with_context(|| format!("{} has no `{name}` column", path.display()))
    };
    let (ia, ie) = (col("alpha")?, col("err_total")?);
    let mut pts = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let get = |j: usize| -> Result<f64> {
            let s = rec.get(j).unwrap_or("");
            s.trim()
                .parse::<f64>()
                .with_context(|| format!("row {}: bad number {s:?}", i + 1))
        };
        pts.push((get(ia)?, get(ie)?));
    }
    if pts.is_empty() {
        bail!("{} has no data rows", path.display());
    }
    Ok(pts)
}

fn decades(lo: f64, hi: f64) -> (f64, f64) {
    let a = lo.log10().floor();
    let mut b = hi.log10().ceil();
    if b <= a {
        b = a + 1.0;
    }
    (a, b)
}

/// Render points, the least-squares line and its slope.
pub fn render_svg(points: &[(f64, f64)]) -> Result<String> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|(a, e)| *a > 0.0 && *e > 0.0)
        .collect();
    if pts.is_empty() {
        bail!("no positive points to plot");
    }
    let fit = fit_loglog(&pts).context("fitting err_total against alpha")?;
    let (xmin, xmax) = pts.iter().fold((f64::MAX, f64::MIN), |(lo, hi), p| {
        (lo.min(p.0), hi.max(p.0))
    });
    let (ymin, ymax) = pts.iter().fold((f64::MAX, f64::MIN), |(lo, hi), p| {
        (lo.min(p.1), hi.max(p.1))
    });
    let (x0, x1) = decades(xmin, xmax);
    let (y0, y1) = decades(ymin, ymax);
    let px = |a: f64| LEFT + (a.log10() - x0) / (x1 - x0) * (W - LEFT - RIGHT);
    let py = |e: f64| H - BOTTOM - (e.log10() - y0) / (y1 - y0) * (H - TOP - BOTTOM);

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    )?;
    writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#)?;
    writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        W - LEFT - RIGHT,
        H - TOP - BOTTOM
    )?;
    for d in (x0 as i32)..=(x1 as i32) {
        let x = px(10f64.powi(d));
        writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{TOP}" stroke="#ddd"/>"##,
            H - BOTTOM
        )?;
        writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" font-size="12" text-anchor="middle">1e{d}</text>"#,
            H - BOTTOM + 18.0
        )?;
    }
    for d in (y0 as i32)..=(y1 as i32) {
        let y = py(10f64.powi(d));
        writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/>"##,
            W - RIGHT
        )?;
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="end">1e{d}</text>"#,
            LEFT - 6.0,
            y + 4.0
        )?;
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-size="14" text-anchor="middle">alpha</text>"#,
        (LEFT + W - RIGHT) / 2.0,
        H - 15.0
    )?;
    writeln!(
        s,
        r#"<text x="20" y="{:.2}" font-size="14" text-anchor="middle" transform="rotate(-90 20 {:.2})">err_total</text>"#,
        (TOP + H - BOTTOM) / 2.0,
        (TOP + H - BOTTOM) / 2.0
    )?;
    let line = |a: f64| (fit.intercept + fit.slope * a.ln()).exp();
    writeln!(
        s,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#c33" stroke-width="1.5"/>"##,
        px(xmin),
        py(line(xmin)),
        px(xmax),
        py(line(xmax))
    )?;
    for &(a, e) in &pts {
        writeln!(
            s,
            r##"<circle cx="{:.2}" cy="{:.2}" r="4" fill="#236"/>"##,
            px(a),
            py(e)
        )?;
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-size="14" text-anchor="end">slope={:.2}</text>"#,
        W - RIGHT - 8.0,
        TOP + 20.0,
        fit.slope
    )?;
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_points_have_unit_slope() {
        let svg = render_svg(&[(1.0, 1.0), (2.0, 0.5), (4.0, 0.25)]).unwrap();
        assert!(svg.contains("slope=-1.00"));
        assert_eq!(
            svg,
            render_svg(&[(1.0, 1.0), (2.0, 0.5), (4.0, 0.25)]).unwrap()
        );
    }

    #[test]
    fn too_few_points() {
        assert!(render_svg(&[]).is_err());
        assert!(render_svg(&[(1.0, 1.0), (2.0, 0.5)]).is_err());
    }
}
