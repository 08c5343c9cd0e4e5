//! Self-contained SVG plots: an 800x800 viewBox, equal axis scales, 5%
//! margin, and polylines and square markers only.

use std::fmt::Write;

use num_complex::Complex64;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
struct Polyline {
    points: Vec<Complex64>,
    stroke: String,
    dashed: bool,
    closed: bool,
}

#[derive(Debug, Clone, PartialEq)]
struct Marker {
    at: Complex64,
    fill: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Plot {
    title: Option<String>,
    lines: Vec<Polyline>,
    markers: Vec<Marker>,
}

impl Plot {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn title(mut self, title: impl Into<String>) -> Self {
        self.title = Some(title.into());
        self
    }

    pub fn polyline<I>(mut self, points: I, stroke: &str, dashed: bool, closed: bool) -> Self
    where
        I: IntoIterator<Item = Complex64>,
    {
        self.lines.push(Polyline {
            points: points.into_iter().collect(),
            stroke: stroke.to_string(),
            dashed,
            closed,
        });
        self
    }

    pub fn marker(mut self, at: Complex64, fill: &str) -> Self {
        self.markers.push(Marker {
            at,
            fill: fill.to_string(),
        });
        self
    }

    fn bounds(&self) -> (f64, f64, f64, f64) {
        let all = self
            .lines
            .iter()
            .flat_map(|l| l.points.iter().copied())
            .chain(self.markers.iter().map(|m| m.at));
        let (mut x0, mut x1, mut y0, mut y1) = (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        );
        for p in all {
            x0 = x0.min(p.re);
            x1 = x1.max(p.re);
            y0 = y0.min(p.im);
            y1 = y1.max(p.im);
        }
        if !x0.is_finite() {
            return (-1.0, 1.0, -1.0, 1.0);
        }
        (x0, x1, y0, y1)
    }

    pub fn render(&self) -> String {
        let (x0, x1, y0, y1) = self.bounds();
        let span = (x1 - x0).max(y1 - y0).max(1e-12);
        let scale = SIZE * (1.0 - 2.0 * MARGIN) / span;
        let (cx, cy) = (0.5 * (x0 + x1), 0.5 * (y0 + y1));
        let map = |p: Complex64| {
            (
                SIZE / 2.0 + (p.re - cx) * scale,
                SIZE / 2.0 - (p.im - cy) * scale,
            )
        };

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">"#
        );
        if let Some(title) = &self.title {
            let _ = writeln!(out, "<title>{}</title>", escape(title));
        }
        let _ = writeln!(
            out,
            r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#
        );
        for line in &self.lines {
            let mut coords = String::new();
            let closing = line.closed.then(|| line.points.first().copied()).flatten();
            for p in line.points.iter().copied().chain(closing) {
                let (x, y) = map(p);
                let _ = write!(coords, "{x:.3},{y:.3} ");
            }
            let dash = if line.dashed {
                r#" stroke-dasharray="6 4""#
            } else {
                ""
            };
            let _ = writeln!(
                out,
                r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"{dash}/>"#,
                coords.trim_end(),
                line.stroke
            );
        }
        for marker in &self.markers {
            let (x, y) = map(marker.at);
            let _ = writeln!(
                out,
                r#"<rect x="{:.3}" y="{:.3}" width="8" height="8" fill="{}"/>"#,
                x - 4.0,
                y - 4.0,
                marker.fill
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
