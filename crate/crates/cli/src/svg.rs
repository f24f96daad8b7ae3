//! Minimal SVG writers for filmstrips and support-function plots.

use std::fmt::Write;

use setflow::reconstruct_polygon;
use setflow::{SupportSample, Vec2};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 20.0;

struct Frame {
    min: Vec2,
    max: Vec2,
}

impl Frame {
    fn of(points: impl Iterator<Item = Vec2>) -> Self {
        let mut min = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut max = -min;
        for p in points {
            min = min.inf(&p);
            max = max.sup(&p);
        }
        if !min.x.is_finite() {
            min = Vec2::new(-1.0, -1.0);
            max = Vec2::new(1.0, 1.0);
        }
        Self { min, max }
    }

    /// Uniform scale, y pointing up.
    fn map(&self, p: Vec2) -> (f64, f64) {
        let span = (self.max - self.min).max().max(1e-12);
        let s = (SIZE - 2.0 * MARGIN) / span;
        (MARGIN + (p.x - self.min.x) * s, SIZE - MARGIN - (p.y - self.min.y) * s)
    }
}

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
}

fn points_attr(frame: &Frame, pts: &[Vec2]) -> String {
    pts.iter()
        .map(|p| {
            let (x, y) = frame.map(*p);
            format!("{x:.3},{y:.3}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn shade(k: usize, count: usize) -> String {
    let f = if count > 1 { k as f64 / (count - 1) as f64 } else { 0.0 };
    let c = (40.0 + 160.0 * f) as u8;
    format!("rgb({c},{c},{})", 255 - c / 2)
}

/// One outline per frame: a `<polygon>` for sets with area, a `<polyline>`
/// for segments and points.
pub fn filmstrip(frames: &[(f64, &SupportSample)], extra: &[Vec<Vec2>]) -> String {
    let shapes: Vec<(f64, Vec<Vec2>)> = frames
        .iter()
        .map(|(t, s)| {
            let verts = reconstruct_polygon(s).map(|p| p.vertices().to_vec()).unwrap_or_default();
            (*t, verts)
        })
        .collect();
    let frame = Frame::of(shapes.iter().flat_map(|(_, v)| v.iter().copied()).chain(extra.iter().flatten().copied()));
    let mut out = String::new();
    header(&mut out);
    for pts in extra {
        let _ = writeln!(
            out,
            r#"<path d="M {} Z" fill="none" stroke="red" stroke-dasharray="4 3"/>"#,
            points_attr(&frame, pts).replace(' ', " L ")
        );
    }
    for (k, (t, verts)) in shapes.iter().enumerate() {
        let color = shade(k, shapes.len());
        let pts = points_attr(&frame, verts);
        if verts.len() >= 3 {
            let _ = writeln!(out, r#"<polygon data-t="{t}" points="{pts}" fill="none" stroke="{color}"/>"#);
        } else {
            let pts = if verts.len() == 1 { format!("{pts} {pts}") } else { pts };
            let _ = writeln!(out, r#"<polyline data-t="{t}" points="{pts}" fill="none" stroke="{color}"/>"#);
        }
    }
    out.push_str("</svg>\n");
    out
}

/// `theta -> sigma(theta)` for each frame, one `<polyline>` per frame.
pub fn support_plot(frames: &[(f64, &SupportSample)]) -> String {
    let curves: Vec<(f64, Vec<Vec2>)> = frames
        .iter()
        .map(|(t, s)| {
            let g = s.grid();
            let pts = (0..g.len()).map(|i| Vec2::new(g.angle(i), s.values()[i])).collect();
            (*t, pts)
        })
        .collect();
    let frame = Frame::of(curves.iter().flat_map(|(_, v)| v.iter().copied()));
    let mut out = String::new();
    header(&mut out);
    for (k, (t, pts)) in curves.iter().enumerate() {
        let color = shade(k, curves.len());
        let _ = writeln!(
            out,
            r#"<polyline data-t="{t}" points="{}" fill="none" stroke="{color}"/>"#,
            points_attr(&frame, pts)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Indices of the samples at times `0, dt, 2 dt, ...` (nearest stored time,
/// no repeats).
pub fn frame_indices(times: &[f64], dt: f64) -> Vec<usize> {
    let Some(&last) = times.last() else { return Vec::new() };
    let t0 = times[0];
    let mut out: Vec<usize> = Vec::new();
    let mut j = 0usize;
    loop {
        let target = t0 + j as f64 * dt;
        if target > last + 1e-9 * dt {
            break;
        }
        let idx = times
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - target).abs().total_cmp(&(b.1 - target).abs()))
            .map(|(i, _)| i)
            .unwrap_or(0);
        if out.last() != Some(&idx) {
            out.push(idx);
        }
        j += 1;
    }
    out
}
