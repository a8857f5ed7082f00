use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiments::{LogLogFit, TraceRecord};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 70.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        let span = if self.x1 > self.x0 { self.x1 - self.x0 } else { 1.0 };
        LEFT + (x - self.x0) / span * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        let span = if self.y1 > self.y0 { self.y1 - self.y0 } else { 1.0 };
        HEIGHT - BOTTOM - (y - self.y0) / span * (HEIGHT - TOP - BOTTOM)
    }
}

fn header(s: &mut String, title: &str) {
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="15">{}</text>"#, WIDTH / 2.0, escape(title));
}

fn polyline(s: &mut String, points: &[(f64, f64)], color: &str) {
    let mut path = String::new();
    for (i, (x, y)) in points.iter().enumerate() {
        let _ = write!(path, "{}{x:.2},{y:.2}", if i == 0 { "" } else { " " });
    }
    let _ = writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{path}"/>"#);
}

fn axes(s: &mut String) {
    let (l, r, t, b) = (LEFT, WIDTH - RIGHT, TOP, HEIGHT - BOTTOM);
    let _ = writeln!(s, r#"<path d="M{l},{t} L{l},{b} L{r},{b} L{r},{t}" fill="none" stroke="black"/>"#);
}

/// Correctness (blue, left axis) and cover rate (red, right axis) against
/// the step count.
pub fn trace_svg(trace: &[TraceRecord], title: &str) -> Result<String> {
    if trace.is_empty() {
        return Err(Error::EmptyInput("trace has no records".into()));
    }
    let f = Frame { x0: 0.0, x1: trace.last().map_or(1, |r| r.step).max(1) as f64, y0: 0.0, y1: 1.0 };
    let mut s = String::new();
    header(&mut s, title);
    axes(&mut s);
    for i in 0..=5 {
        let v = i as f64 / 5.0;
        let y = f.py(v);
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="end" fill="blue">{v:.1}</text>"#, LEFT - 6.0, y + 4.0);
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" fill="red">{v:.1}</text>"#, WIDTH - RIGHT + 6.0, y + 4.0);
        let step = (f.x1 * v).round();
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{step}</text>"#, f.px(step), HEIGHT - BOTTOM + 18.0);
    }
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">number of steps</text>"#, WIDTH / 2.0, HEIGHT - 18.0);
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.1}" text-anchor="middle" fill="blue" transform="rotate(-90 18 {:.1})">matching correctness</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    let rx = WIDTH - 18.0;
    let _ = writeln!(
        s,
        r#"<text x="{rx}" y="{:.1}" text-anchor="middle" fill="red" transform="rotate(90 {rx} {:.1})">cover rate</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    let pts = |g: fn(&TraceRecord) -> f64| trace.iter().map(|r| (f.px(r.step as f64), f.py(g(r)))).collect::<Vec<_>>();
    polyline(&mut s, &pts(|r| r.correctness), "blue");
    polyline(&mut s, &pts(|r| r.cover_rate), "red");
    s.push_str("</svg>\n");
    Ok(s)
}

/// Points `(n, t)` on log-log axes with the fitted line, if any.
pub fn loglog_svg(points: &[(f64, f64)], fit: Option<&LogLogFit<f64>>, title: &str) -> Result<String> {
    if points.is_empty() {
        return Err(Error::EmptyInput("no points to plot".into()));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(Error::InvalidArgument("log-log plot needs positive coordinates".into()));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &logs {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let pad = |a: f64, b: f64| 0.05 * (b - a).max(1e-9);
    let (px, py) = (pad(x0, x1), pad(y0, y1));
    let f = Frame { x0: x0 - px, x1: x1 + px, y0: y0 - py, y1: y1 + py };
    let mut s = String::new();
    header(&mut s, title);
    axes(&mut s);
    for &(x, y) in &logs {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="blue"/>"#, f.px(x), f.py(y));
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.1}" text-anchor="middle">{:.0}</text>"#, f.px(x), HEIGHT - BOTTOM + 18.0, x.exp());
    }
    if let Some(fit) = fit {
        let line = [f.x0, f.x1].map(|x| (f.px(x), f.py(fit.intercept + fit.slope * x)));
        polyline(&mut s, &line, "red");
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" fill="red">slope {:.3}</text>"#, LEFT + 10.0, TOP + 16.0, fit.slope);
    }
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">n (log scale)</text>"#, WIDTH / 2.0, HEIGHT - 18.0);
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">steps to anonymization (log scale)</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    s.push_str("</svg>\n");
    Ok(s)
}

/// Writes [`trace_svg`] to `path`.
pub fn write_svg_plot(trace: &[TraceRecord], title: &str, path: &Path) -> Result<()> {
    let svg = trace_svg(trace, title)?;
    std::fs::write(path, svg)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_labelled() {
        let t = vec![
            TraceRecord { step: 0, correctness: 1.0, cover_rate: 0.0, per_community: None, objective: 0 },
            TraceRecord { step: 10, correctness: 0.5, cover_rate: 0.4, per_community: None, objective: 0 },
        ];
        let a = trace_svg(&t, "n < 10").unwrap();
        assert_eq!(a, trace_svg(&t, "n < 10").unwrap());
        assert!(a.contains("matching correctness") && a.contains("cover rate") && a.contains("n &lt; 10"));
        assert_eq!(a.matches("<polyline").count(), 2);
        assert!(trace_svg(&[], "x").is_err());
        assert!(loglog_svg(&[(49.0, 500.0), (100.0, 2000.0)], None, "fit").unwrap().contains("<circle"));
    }
}
