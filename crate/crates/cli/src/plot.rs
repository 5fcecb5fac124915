//! Minimal SVG line charts for probability traces.

use std::fmt::Write as _;

pub struct Series<'a> {
    pub label: &'a str,
    pub color: &'a str,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 50.0;

/// Renders the series over a shared x range with y fixed to `[0, 1]`.
/// With `step`, each value is held until the next x (piecewise-constant
/// data such as per-slice probabilities).
pub fn probability_chart(title: &str, x_label: &str, series: &[Series<'_>], step: bool) -> String {
    let xs = series.iter().flat_map(|s| s.points.iter().map(|p| p.0));
    let (mut lo, mut hi) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    if !lo.is_finite() || !hi.is_finite() {
        (lo, hi) = (0.0, 1.0);
    }
    if hi <= lo {
        hi = lo + 1.0;
    }
    // step plots get one extra slice width past the last boundary
    let pad = if step { (hi - lo) * 0.15 } else { 0.0 };
    let x_max = hi + pad;
    let sx = |x: f64| MARGIN + (x - lo) / (x_max - lo) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - y.clamp(0.0, 1.0) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(svg, r#"<text x="{}" y="24" font-size="16" text-anchor="middle">{}</text>"#, WIDTH / 2.0, escape(title));
    let (x0, x1, y0, y1) = (sx(lo), sx(x_max), sy(0.0), sy(1.0));
    let _ = writeln!(
        svg,
        r#"<path d="M{x0:.2},{y1:.2} L{x0:.2},{y0:.2} L{x1:.2},{y0:.2}" stroke="black" fill="none"/>"#
    );
    for (y, label) in [(0.0, "0"), (0.5, "0.5"), (1.0, "1")] {
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{label}</text>"#, x0 - 6.0, sy(y) + 4.0);
    }
    for x in [lo, hi] {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text>"#,
            sx(x),
            y0 + 16.0,
            crate::format::fmt_num(x)
        );
    }
    let _ = writeln!(svg, r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{}</text>"#, WIDTH / 2.0, HEIGHT - 10.0, escape(x_label));

    for (k, s) in series.iter().enumerate() {
        let mut d = String::new();
        for (i, &(x, y)) in s.points.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            if step && i > 0 {
                let prev = s.points[i - 1].1;
                let _ = write!(d, "L{:.2},{:.2} ", sx(x), sy(prev));
            }
            let _ = write!(d, "{cmd}{:.2},{:.2} ", sx(x), sy(y));
        }
        if let (true, Some(&(_, y))) = (step, s.points.last()) {
            let _ = write!(d, "L{:.2},{:.2}", x1, sy(y));
        }
        let _ = writeln!(svg, r#"<path d="{}" stroke="{}" stroke-width="2" fill="none"/>"#, d.trim_end(), s.color);
        let ly = MARGIN + 14.0 * k as f64;
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{ly:.2}" font-size="12" fill="{}">{}</text>"#, x1 - 90.0, s.color, escape(s.label));
    }
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_well_formed_svg() {
        let s = Series { label: "P_pair", color: "red", points: vec![(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)] };
        let svg = probability_chart("trap <test>", "t", &[s], true);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("trap &lt;test&gt;"));
        assert_eq!(svg.matches("<path").count(), 2);
    }
}
