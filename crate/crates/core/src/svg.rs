//! Minimal deterministic SVG plots of curves in the complex plane.
//!
//! Output depends only on the input points: coordinates are printed with a
//! fixed number of decimals and elements are emitted in insertion order.

use std::fmt::Write;

use num_complex::Complex64;

pub const SIZE: f64 = 800.0;
const PAD: f64 = 40.0;
/// Points farther than this from the origin never set the view.
const VIEW_LIMIT: f64 = 10.0;
/// Plot coordinates are clamped to this many viewports from the origin.
const CLAMP: f64 = 1e4;

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    pub color: &'static str,
    pub dashed: bool,
    pub points: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Marker {
    pub label: String,
    pub color: &'static str,
    pub at: Complex64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Plot {
    pub title: String,
    pub curves: Vec<Curve>,
    pub markers: Vec<Marker>,
}

/// Square view `(center, half_width)` covering every finite point with
/// modulus at most `VIEW_LIMIT`, plus the origin.
fn view(plot: &Plot) -> (Complex64, f64) {
    let pts = plot
        .curves
        .iter()
        .flat_map(|c| c.points.iter())
        .chain(plot.markers.iter().map(|m| &m.at))
        .copied()
        .filter(|w| w.re.is_finite() && w.im.is_finite() && w.norm() <= VIEW_LIMIT)
        .chain(std::iter::once(Complex64::new(0.0, 0.0)));
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for w in pts {
        x0 = x0.min(w.re);
        x1 = x1.max(w.re);
        y0 = y0.min(w.im);
        y1 = y1.max(w.im);
    }
    let half = (0.5 * (x1 - x0).max(y1 - y0) * 1.1).max(0.5);
    (Complex64::new(0.5 * (x0 + x1), 0.5 * (y0 + y1)), half)
}

fn nice_step(half: f64) -> f64 {
    let raw = half / 4.0;
    let mag = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * mag)
        .find(|&s| s >= raw)
        .unwrap_or(10.0 * mag)
}

fn fmt_coord(v: f64) -> String {
    let v = v.clamp(-CLAMP * SIZE, CLAMP * SIZE);
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

fn fmt_tick(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders the plot as a standalone 800×800 SVG document.
pub fn render(plot: &Plot) -> String {
    let (center, half) = view(plot);
    let scale = (SIZE - 2.0 * PAD) / (2.0 * half);
    let px = |w: Complex64| -> (f64, f64) {
        (
            SIZE / 2.0 + (w.re - center.re) * scale,
            SIZE / 2.0 - (w.im - center.im) * scale,
        )
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800">"#
    );
    let _ = writeln!(
        out,
        r#"<defs><clipPath id="frame"><rect x="{p}" y="{p}" width="{w}" height="{w}"/></clipPath></defs>"#,
        p = fmt_coord(PAD),
        w = fmt_coord(SIZE - 2.0 * PAD)
    );
    let _ = writeln!(out, r##"<rect width="800" height="800" fill="#ffffff"/>"##);

    // grid and axes
    let step = nice_step(half);
    let lo = |c: f64| ((c - half) / step).ceil() as i64;
    let hi = |c: f64| ((c + half) / step).floor() as i64;
    let _ = writeln!(out, r##"<g stroke="#e0e0e0" stroke-width="1" font-family="monospace" font-size="11" fill="#606060">"##);
    for i in lo(center.re)..=hi(center.re) {
        let x = i as f64 * step;
        let (sx, _) = px(Complex64::new(x, 0.0));
        let _ = writeln!(
            out,
            r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}"/><text x="{0}" y="{3}" text-anchor="middle" stroke="none">{4}</text>"#,
            fmt_coord(sx),
            fmt_coord(PAD),
            fmt_coord(SIZE - PAD),
            fmt_coord(SIZE - PAD + 14.0),
            fmt_tick(x)
        );
    }
    for i in lo(center.im)..=hi(center.im) {
        let y = i as f64 * step;
        let (_, sy) = px(Complex64::new(0.0, y));
        let _ = writeln!(
            out,
            r#"<line x1="{1}" y1="{0}" x2="{2}" y2="{0}"/><text x="{3}" y="{0}" text-anchor="end" stroke="none">{4}</text>"#,
            fmt_coord(sy),
            fmt_coord(PAD),
            fmt_coord(SIZE - PAD),
            fmt_coord(PAD - 4.0),
            fmt_tick(y)
        );
    }
    let _ = writeln!(out, "</g>");
    let (ox, oy) = px(Complex64::new(0.0, 0.0));
    let _ = writeln!(
        out,
        r##"<g stroke="#000000" stroke-width="1" clip-path="url(#frame)"><line x1="{0}" y1="{1}" x2="{2}" y2="{1}"/><line x1="{3}" y1="{0}" x2="{3}" y2="{2}"/></g>"##,
        fmt_coord(PAD),
        fmt_coord(oy),
        fmt_coord(SIZE - PAD),
        fmt_coord(ox)
    );

    // curves, split at non-finite points
    for c in &plot.curves {
        let dash = if c.dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            out,
            r#"<g fill="none" stroke="{}" stroke-width="2"{dash} clip-path="url(#frame)">"#,
            c.color
        );
        for run in c.points.split(|w| !(w.re.is_finite() && w.im.is_finite())) {
            if run.len() < 2 {
                continue;
            }
            let pts: Vec<String> = run
                .iter()
                .map(|&w| {
                    let (x, y) = px(w);
                    format!("{},{}", fmt_coord(x), fmt_coord(y))
                })
                .collect();
            let _ = writeln!(out, r#"<polyline points="{}"/>"#, pts.join(" "));
        }
        let _ = writeln!(out, "</g>");
    }
    for m in &plot.markers {
        let (x, y) = px(m.at);
        let _ = writeln!(
            out,
            r##"<circle cx="{}" cy="{}" r="5" fill="{}" stroke="#000000" stroke-width="1"/>"##,
            fmt_coord(x),
            fmt_coord(y),
            m.color
        );
    }

    // legend
    let rows = plot.curves.len() + plot.markers.len();
    let _ = writeln!(
        out,
        r##"<g font-family="monospace" font-size="13"><rect x="50" y="50" width="330" height="{}" fill="#ffffff" fill-opacity="0.9" stroke="#808080"/>"##,
        fmt_coord(28.0 + 20.0 * rows as f64)
    );
    let _ = writeln!(out, r#"<text x="60" y="68">{}</text>"#, escape(&plot.title));
    let mut y = 88.0;
    for c in &plot.curves {
        let dash = if c.dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            out,
            r#"<line x1="60" y1="{0}" x2="90" y2="{0}" stroke="{1}" stroke-width="2"{dash}/><text x="98" y="{2}">{3}</text>"#,
            fmt_coord(y - 4.0),
            c.color,
            fmt_coord(y),
            escape(&c.label)
        );
        y += 20.0;
    }
    for m in &plot.markers {
        let _ = writeln!(
            out,
            r##"<circle cx="75" cy="{0}" r="5" fill="{1}" stroke="#000000"/><text x="98" y="{2}">{3}</text>"##,
            fmt_coord(y - 4.0),
            m.color,
            fmt_coord(y),
            escape(&m.label)
        );
        y += 20.0;
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(center: f64, r: f64) -> Vec<Complex64> {
        (0..=64)
            .map(|j| center + Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / 64.0))
            .collect()
    }

    #[test]
    fn renders_deterministically() {
        let plot = Plot {
            title: "unit <test>".into(),
            curves: vec![Curve {
                label: "|w-1| = 1".into(),
                color: "#1f77b4",
                dashed: false,
                points: circle(1.0, 1.0),
            }],
            markers: vec![Marker {
                label: "origin".into(),
                color: "#d62728",
                at: Complex64::new(0.0, 0.0),
            }],
        };
        let a = render(&plot);
        assert_eq!(a, render(&plot));
        assert!(a.starts_with("<svg"));
        assert!(a.contains(r#"width="800" height="800""#));
        assert!(a.contains("unit &lt;test&gt;"));
        assert!(!a.contains("NaN") && !a.contains("inf"));
    }

    #[test]
    fn splits_at_non_finite_points() {
        let mut pts = circle(0.0, 1.0);
        pts[32] = Complex64::new(f64::NAN, 0.0);
        let plot = Plot {
            title: String::new(),
            curves: vec![Curve {
                label: "c".into(),
                color: "#000000",
                dashed: true,
                points: pts,
            }],
            markers: vec![],
        };
        assert_eq!(render(&plot).matches("<polyline").count(), 2);
    }

    #[test]
    fn tick_steps() {
        assert_eq!(nice_step(2.0), 0.5);
        assert_eq!(nice_step(1.0), 0.5);
        assert_eq!(nice_step(10.0), 5.0);
        assert_eq!(fmt_tick(-0.0), "0");
        assert_eq!(fmt_tick(1.5), "1.5");
    }
}
