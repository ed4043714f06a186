//! Minimal SVG output for scatter grids and isotracal paths.

use std::fmt::Write;

use crate::henon::{Cell, IsotracalPath, ScatterGrid};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 800.0;
const MARGIN: f64 = 50.0;

struct Frame {
    a: (f64, f64),
    b: (f64, f64),
}

impl Frame {
    fn x(&self, a: f64) -> f64 {
        MARGIN + (a - self.a.0) / (self.a.1 - self.a.0) * (WIDTH - 2.0 * MARGIN)
    }

    fn y(&self, b: f64) -> f64 {
        HEIGHT - MARGIN - (b - self.b.0) / (self.b.1 - self.b.0) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn header(out: &mut String, frame: &Frame, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="30" font-family="sans-serif" font-size="16" text-anchor="middle">{title}</text>"#,
        WIDTH / 2.0
    );
    let (x0, x1, y0, y1) = (frame.x(frame.a.0), frame.x(frame.a.1), frame.y(frame.b.0), frame.y(frame.b.1));
    let _ = writeln!(
        out,
        r#"<rect x="{x0:.2}" y="{y1:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        x1 - x0,
        y0 - y1
    );
    for (v, x, anchor) in [(frame.a.0, x0, "start"), (frame.a.1, x1, "end")] {
        let _ = writeln!(
            out,
            r#"<text x="{x:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="{anchor}">a={v}</text>"#,
            y0 + 18.0
        );
    }
    for (v, y) in [(frame.b.0, y0), (frame.b.1, y1)] {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{y:.2}" font-family="sans-serif" font-size="12" text-anchor="end">b={v}</text>"#,
            x0 - 4.0
        );
    }
}

fn gray(period: usize, lo: usize, hi: usize) -> u8 {
    if hi == lo {
        return 60;
    }
    (40 + 160 * (period - lo) / (hi - lo)) as u8
}

fn draw_paths(out: &mut String, frame: &Frame, paths: &[IsotracalPath]) {
    for path in paths {
        let colour = match path.branch {
            crate::henon::Branch::Minus => "#c0392b",
            crate::henon::Branch::Plus => "#2471a3",
        };
        let points: Vec<String> =
            path.samples.iter().map(|s| format!("{:.2},{:.2}", frame.x(s.a), frame.y(s.b))).collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
    }
}

/// Periodic cells as grey rectangles (darker for shorter periods), with
/// optional paths drawn on top.
pub fn scatter_svg(grid: &ScatterGrid, paths: &[IsotracalPath], title: &str) -> String {
    let spec = &grid.spec;
    let frame = Frame { a: spec.a_range, b: spec.b_range };
    let mut out = String::new();
    header(&mut out, &frame, title);
    let na = spec.a_res.max(2);
    let nb = spec.b_res.max(2);
    let cw = (WIDTH - 2.0 * MARGIN) / na as f64;
    let ch = (HEIGHT - 2.0 * MARGIN) / nb as f64;
    for j in 0..spec.b_res {
        let mut i = 0;
        while i < spec.a_res {
            let cell = grid.cell(i, j);
            let start = i;
            while i < spec.a_res && grid.cell(i, j) == cell {
                i += 1;
            }
            if let Cell::Period(q) = cell {
                let g = gray(q, spec.period_min, spec.period_max);
                let _ = writeln!(
                    out,
                    r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="rgb({g},{g},{g})"/>"#,
                    MARGIN + start as f64 * cw,
                    HEIGHT - MARGIN - (j + 1) as f64 * ch,
                    (i - start) as f64 * cw,
                    ch
                );
            }
        }
    }
    draw_paths(&mut out, &frame, paths);
    out.push_str("</svg>\n");
    out
}

/// Paths alone, framed by their own extent.
pub fn paths_svg(paths: &[IsotracalPath], title: &str) -> String {
    let samples = paths.iter().flat_map(|p| &p.samples);
    let (mut a0, mut a1, mut b1) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
    for s in samples {
        a0 = a0.min(s.a);
        a1 = a1.max(s.a);
        b1 = b1.max(s.b);
    }
    if !a0.is_finite() {
        (a0, a1) = (0.0, 1.0);
    }
    let pad = 0.05 * (a1 - a0).max(1e-6);
    let frame = Frame { a: (a0 - pad, a1 + pad), b: (0.0, if b1 > 0.0 { 1.05 * b1 } else { 1.0 }) };
    let mut out = String::new();
    header(&mut out, &frame, title);
    draw_paths(&mut out, &frame, paths);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::henon::{scatter, ScatterSpec};

    #[test]
    fn emits_well_formed_svg() {
        let grid = scatter(&ScatterSpec { a_res: 20, b_res: 4, period_min: 1, period_max: 8, ..Default::default() });
        let svg = scatter_svg(&grid, &[], "test");
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("<rect"));
        let empty = paths_svg(&[], "none");
        assert!(empty.contains("</svg>"));
    }
}
