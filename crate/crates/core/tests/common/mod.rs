//! Reference computations that avoid the library's own geometry code.
#![allow(dead_code)]

use std::f64::consts::TAU;

/// `(cos, sin)` of `2 pi i / n`, straight from libm.
pub fn direction(i: usize, n: usize) -> (f64, f64) {
    let a = TAU * i as f64 / n as f64;
    (a.cos(), a.sin())
}

/// Support values of a vertex list by brute-force maximization.
pub fn support_direct(vertices: &[(f64, f64)], n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let (c, s) = direction(i, n);
            vertices.iter().map(|(x, y)| c * x + s * y).fold(f64::NEG_INFINITY, f64::max)
        })
        .collect()
}

pub fn rect_vertices(x0: f64, x1: f64, y0: f64, y1: f64) -> Vec<(f64, f64)> {
    vec![(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
}

/// `e^{-t} s_a + (1 - e^{-t}) s_q`.
pub fn relax_closed_form(sa: &[f64], sq: &[f64], t: f64) -> Vec<f64> {
    let w = (-t).exp();
    sa.iter().zip(sq).map(|(a, q)| w * a + (1.0 - w) * q).collect()
}

pub fn sup_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn seg_dist(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let s = if len2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0) };
    let (qx, qy) = (a.0 + s * dx, a.1 + s * dy);
    ((p.0 - qx).powi(2) + (p.1 - qy).powi(2)).sqrt()
}

/// Winding test for a counterclockwise convex polygon (closed).
fn inside(p: (f64, f64), poly: &[(f64, f64)]) -> bool {
    if poly.len() < 3 {
        return false;
    }
    (0..poly.len()).all(|i| {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0) >= 0.0
    })
}

fn dist_to_set(p: (f64, f64), poly: &[(f64, f64)]) -> f64 {
    if inside(p, poly) {
        return 0.0;
    }
    if poly.len() == 1 {
        return seg_dist(p, poly[0], poly[0]);
    }
    (0..poly.len())
        .map(|i| seg_dist(p, poly[i], poly[(i + 1) % poly.len()]))
        .fold(f64::INFINITY, f64::min)
}

/// Hausdorff distance by sampling `per_edge` points on every boundary edge of
/// both sets. Converges from below as `per_edge` grows.
pub fn hausdorff_dense(p: &[(f64, f64)], q: &[(f64, f64)], per_edge: usize) -> f64 {
    let one_sided = |a: &[(f64, f64)], b: &[(f64, f64)]| {
        let mut worst = 0.0_f64;
        for i in 0..a.len() {
            let (u, v) = (a[i], a[(i + 1) % a.len()]);
            for k in 0..=per_edge {
                let s = k as f64 / per_edge as f64;
                let x = (u.0 + s * (v.0 - u.0), u.1 + s * (v.1 - u.1));
                worst = worst.max(dist_to_set(x, b));
            }
        }
        worst
    };
    one_sided(p, q).max(one_sided(q, p))
}

/// Minkowski sum by summing all vertex pairs and taking the hull.
pub fn minkowski_vertex_sum(p: &[(f64, f64)], q: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = p.iter().flat_map(|a| q.iter().map(move |b| (a.0 + b.0, a.1 + b.1))).collect();
    gift_wrap(&mut pts)
}

/// Jarvis march; counterclockwise, collinear points dropped.
pub fn gift_wrap(pts: &mut Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    if pts.len() < 3 {
        return pts.clone();
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let start = 0;
    let mut hull = vec![];
    let mut cur = start;
    loop {
        hull.push(pts[cur]);
        let mut cand = (cur + 1) % pts.len();
        for j in 0..pts.len() {
            let c = cross(pts[cur], pts[cand], pts[j]);
            let d2 = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2);
            if c < 0.0 || (c == 0.0 && d2(pts[cur], pts[j]) > d2(pts[cur], pts[cand])) {
                cand = j;
            }
        }
        cur = cand;
        if cur == start || hull.len() > pts.len() {
            break;
        }
    }
    hull
}
