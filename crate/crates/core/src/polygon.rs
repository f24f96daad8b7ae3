//! Convex polygons as vertex lists, with the exact point/set distances used
//! as oracles for the grid-based calculus.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::grid::Vec2;
use crate::tolerance::tol_geom;

#[inline]
pub(crate) fn cross(a: Vec2, b: Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

/// A nonempty convex compact set in the plane, stored as counterclockwise
/// vertices with no repeated or collinear consecutive vertices.
///
/// Points (one vertex) and segments (two vertices) are valid polygons.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Vec2>,
}

impl ConvexPolygon {
    /// Validates a counterclockwise convex vertex list.
    ///
    /// Repeated vertices and collinear middle vertices are dropped. Inputs
    /// whose vertices are all collinear collapse to the segment between the
    /// extreme points.
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyPolygon);
        }
        for (i, v) in vertices.iter().enumerate() {
            if !(v.x.is_finite() && v.y.is_finite()) {
                return Err(Error::NonFinite(i));
            }
        }
        let tol = tol_geom(magnitude(&vertices));
        let mut pts: Vec<Vec2> = Vec::with_capacity(vertices.len());
        for v in vertices {
            if pts.last().is_none_or(|p: &Vec2| (p - v).norm() > tol) {
                pts.push(v);
            }
        }
        while pts.len() > 1 && (pts[0] - pts[pts.len() - 1]).norm() <= tol {
            pts.pop();
        }
        let m = pts.len();
        if m <= 2 {
            return Ok(Self { vertices: pts });
        }
        if pts.iter().all(|p| line_distance(pts[0], pts[1], *p) <= tol) {
            return Ok(Self::hull(&pts));
        }
        let mut turning = 0.0;
        for i in 0..m {
            let a = pts[(i + m - 1) % m];
            let b = pts[i];
            let c = pts[(i + 1) % m];
            let (e1, e2) = (b - a, c - b);
            let z = cross(e1, e2);
            if z < -tol * e1.norm().max(e2.norm()) {
                return Err(Error::NotConvex(i));
            }
            turning += z.atan2(e1.dot(&e2));
        }
        if (turning - TAU).abs() > 1e-6 {
            return Err(Error::NotConvex(0));
        }
        Ok(Self { vertices: drop_collinear(pts, tol) })
    }

    /// Convex hull of an arbitrary point cloud.
    pub fn from_points(points: &[Vec2]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPolygon);
        }
        for (i, v) in points.iter().enumerate() {
            if !(v.x.is_finite() && v.y.is_finite()) {
                return Err(Error::NonFinite(i));
            }
        }
        Ok(Self::hull(points))
    }

    /// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
    pub fn rectangle(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        if !(x0 <= x1 && y0 <= y1) {
            return Err(Error::InvalidParameter(format!(
                "rectangle bounds out of order: [{x0}, {x1}] x [{y0}, {y1}]"
            )));
        }
        Self::new(vec![
            Vec2::new(x0, y0),
            Vec2::new(x1, y0),
            Vec2::new(x1, y1),
            Vec2::new(x0, y1),
        ])
    }

    pub fn point(p: Vec2) -> Self {
        Self { vertices: vec![p] }
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Largest absolute coordinate.
    pub fn magnitude(&self) -> f64 {
        magnitude(&self.vertices)
    }

    pub fn support(&self, p: Vec2) -> f64 {
        self.vertices
            .iter()
            .map(|v| p.dot(v))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn area(&self) -> f64 {
        let m = self.vertices.len();
        (0..m)
            .map(|i| cross(self.vertices[i], self.vertices[(i + 1) % m]))
            .sum::<f64>()
            * 0.5
    }

    /// Edges as `(start, end)` pairs; a point yields one degenerate edge.
    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let m = self.vertices.len();
        let count = if m == 2 { 1 } else { m };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % m]))
    }

    /// Andrew's monotone chain without collinear points.
    fn hull(points: &[Vec2]) -> Self {
        let tol = tol_geom(magnitude(points));
        let mut pts: Vec<Vec2> = points.to_vec();
        pts.sort_by(|a, b| {
            a.x.partial_cmp(&b.x)
                .unwrap_or(Ordering::Equal)
                .then(a.y.partial_cmp(&b.y).unwrap_or(Ordering::Equal))
        });
        pts.dedup_by(|a, b| (*a - *b).norm() <= tol);
        if pts.len() <= 2 {
            return Self { vertices: pts };
        }
        let mut lower: Vec<Vec2> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2
                && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= tol
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Vec2> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2
                && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= tol
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() == 2 && (lower[0] - lower[1]).norm() <= tol {
            lower.pop();
        }
        Self { vertices: lower }
    }

    /// Whether `x` lies in the polygon within `tol`.
    pub fn contains(&self, x: Vec2, tol: f64) -> bool {
        (project_point(x, self) - x).norm() <= tol
    }
}

fn magnitude(points: &[Vec2]) -> f64 {
    points
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.x.abs()).max(v.y.abs()))
}

/// Signed turn of `a -> b -> c`, scaled to a length (cross / |c - a|).
fn turn(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    let base = (c - a).norm();
    if base == 0.0 {
        return 0.0;
    }
    cross(b - a, c - a) / base
}

fn line_distance(a: Vec2, b: Vec2, p: Vec2) -> f64 {
    let d = b - a;
    let len = d.norm();
    if len == 0.0 {
        return (p - a).norm();
    }
    cross(d, p - a).abs() / len
}

fn drop_collinear(mut pts: Vec<Vec2>, tol: f64) -> Vec<Vec2> {
    let mut changed = true;
    while changed && pts.len() > 2 {
        changed = false;
        let m = pts.len();
        for i in 0..m {
            let a = pts[(i + m - 1) % m];
            let c = pts[(i + 1) % m];
            if line_distance(a, c, pts[i]) <= tol && (pts[i] - a).dot(&(c - pts[i])) >= 0.0 {
                pts.remove(i);
                changed = true;
                break;
            }
        }
    }
    pts
}

fn closest_on_segment(x: Vec2, a: Vec2, b: Vec2) -> Vec2 {
    let d = b - a;
    let len2 = d.norm_squared();
    if len2 == 0.0 {
        return a;
    }
    let s = ((x - a).dot(&d) / len2).clamp(0.0, 1.0);
    a + d * s
}

/// Nearest point of `poly` to `x`.
pub fn project_point(x: Vec2, poly: &ConvexPolygon) -> Vec2 {
    let v = poly.vertices();
    if v.len() >= 3 {
        let m = v.len();
        let inside = (0..m).all(|i| cross(v[(i + 1) % m] - v[i], x - v[i]) >= 0.0);
        if inside {
            return x;
        }
    }
    let mut best = v[0];
    let mut best_d = f64::INFINITY;
    for (a, b) in poly.edges() {
        let c = closest_on_segment(x, a, b);
        let d = (x - c).norm_squared();
        if d < best_d {
            best_d = d;
            best = c;
        }
    }
    best
}

/// Euclidean distance from a point to a polygon.
pub fn point_distance(x: Vec2, poly: &ConvexPolygon) -> f64 {
    (x - project_point(x, poly)).norm()
}

/// One-sided distance `sup_{a in P} dist(a, Q)`.
///
/// `dist(., Q)` is convex, so its maximum over `P` sits at a vertex.
pub fn one_sided_distance(p: &ConvexPolygon, q: &ConvexPolygon) -> f64 {
    p.vertices()
        .iter()
        .map(|v| point_distance(*v, q))
        .fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance computed from the vertex sets.
pub fn hausdorff_exact(p: &ConvexPolygon, q: &ConvexPolygon) -> f64 {
    one_sided_distance(p, q).max(one_sided_distance(q, p))
}

/// Pair `(a*, b*)` realizing the one-sided distance from `p` to `q`:
/// `a*` is the first vertex of `p` farthest from `q`, `b*` its projection.
pub fn farthest_realizer(p: &ConvexPolygon, q: &ConvexPolygon) -> Result<(Vec2, Vec2)> {
    let mut best = 0;
    let mut best_d = f64::NEG_INFINITY;
    for (i, v) in p.vertices().iter().enumerate() {
        let d = point_distance(*v, q);
        if d > best_d {
            best_d = d;
            best = i;
        }
    }
    let tol = tol_geom(p.magnitude().max(q.magnitude()));
    if best_d <= tol {
        return Err(Error::Contained);
    }
    let a = p.vertices()[best];
    Ok((a, project_point(a, q)))
}

/// All vertices of `p` whose distance to `q` equals the one-sided distance
/// within `tol`, paired with their projections.
pub fn realizing_pairs(p: &ConvexPolygon, q: &ConvexPolygon, tol: f64) -> Vec<(Vec2, Vec2)> {
    let dists: Vec<f64> = p.vertices().iter().map(|v| point_distance(*v, q)).collect();
    let max = dists.iter().copied().fold(0.0, f64::max);
    p.vertices()
        .iter()
        .zip(&dists)
        .filter(|(_, d)| **d >= max - tol)
        .map(|(v, _)| (*v, project_point(*v, q)))
        .collect()
}
