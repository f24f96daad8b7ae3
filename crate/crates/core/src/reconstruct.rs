//! Halfplane intersection `{x : <u_i, x> <= s_i}` over a direction grid.
//!
//! Constraints are kept in a circular list in angular order. A constraint
//! `j` between its live neighbours `i` and `k` (angular span below pi) is
//! redundant when the corner of lines `i` and `k` already satisfies it.
//! Removing redundant constraints never opens a gap of pi or more, so every
//! consecutive pair of survivors meets in a vertex. A survivor triple whose
//! span is at least pi with a negative edge length is a Farkas certificate of
//! emptiness; otherwise the survivors describe the polygon edge by edge.

use crate::error::{Error, Result};
use crate::grid::{DirectionGrid, Vec2};
use crate::polygon::ConvexPolygon;
use crate::support::{is_in_cone, SupportSample};
use crate::tolerance::{norm_inf, tol_cone, tol_geom};

/// Surviving constraints in angular order.
struct Active {
    indices: Vec<usize>,
}

fn offset(grid: &DirectionGrid, from: usize, to: usize) -> usize {
    (to + grid.len() - from) % grid.len()
}

/// Corner of lines `i` and `k` (requires `0 < angle(i -> k) < pi`).
fn corner(grid: &DirectionGrid, values: &[f64], i: usize, k: usize) -> Vec2 {
    let (ui, uk) = (grid.direction(i), grid.direction(k));
    let det = ui.x * uk.y - ui.y * uk.x;
    let (si, sk) = (values[i], values[k]);
    Vec2::new((si * uk.y - sk * ui.y) / det, (sk * ui.x - si * uk.x) / det)
}

/// `sin(k-j) s_i + sin(j-i) s_k - sin(k-i) s_j`, proportional to the length
/// of edge `j` between neighbours `i` and `k`.
fn edge_determinant(grid: &DirectionGrid, values: &[f64], i: usize, j: usize, k: usize) -> f64 {
    let a = grid.sin_steps(offset(grid, j, k));
    let b = grid.sin_steps(offset(grid, i, j));
    let c = grid.sin_steps(offset(grid, i, k));
    a * values[i] + b * values[k] - c * values[j]
}

fn reduce(grid: &DirectionGrid, values: &[f64]) -> Result<Active> {
    let n = grid.len();
    if values.len() != n {
        return Err(Error::LengthMismatch { expected: n, actual: values.len() });
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    let mut prev: Vec<usize> = (0..n).map(|i| grid.prev(i)).collect();
    let mut next: Vec<usize> = (0..n).map(|i| grid.next(i)).collect();
    let mut alive = vec![true; n];
    let mut live = n;
    let mut work: Vec<usize> = (0..n).rev().collect();

    while let Some(j) = work.pop() {
        if !alive[j] || live <= 3 {
            continue;
        }
        let (i, k) = (prev[j], next[j]);
        if 2 * offset(grid, i, k) >= n {
            continue;
        }
        if edge_determinant(grid, values, i, j, k) < 0.0 {
            alive[j] = false;
            live -= 1;
            next[i] = k;
            prev[k] = i;
            work.push(k);
            work.push(i);
        }
    }

    let start = (0..n).find(|&i| alive[i]).expect("at least three constraints survive");
    let mut indices = vec![start];
    let mut cur = next[start];
    while cur != start {
        indices.push(cur);
        cur = next[cur];
    }

    let tol = tol_geom(norm_inf(values));
    let m = indices.len();
    for t in 0..m {
        let (i, j, k) = (indices[(t + m - 1) % m], indices[t], indices[(t + 1) % m]);
        let det = edge_determinant(grid, values, i, j, k);
        if det >= 0.0 {
            continue;
        }
        let span_left = grid.sin_steps(offset(grid, i, j));
        let span_right = grid.sin_steps(offset(grid, j, k));
        let length = det / (span_left * span_right);
        if length < -tol {
            return Err(Error::EmptyIntersection);
        }
    }
    Ok(Active { indices })
}

/// Inverse of the support map for grid-consistent samples.
///
/// The result is the polygon cut out by the sample's supporting halfplanes,
/// with coincident and collinear vertices merged.
pub fn reconstruct_polygon(s: &SupportSample) -> Result<ConvexPolygon> {
    halfplane_polygon(s.grid(), s.values())
}

/// Polygon `{x : <u_i, x> <= values_i}` for arbitrary grid values.
pub fn halfplane_polygon(grid: &DirectionGrid, values: &[f64]) -> Result<ConvexPolygon> {
    let active = reduce(grid, values)?;
    let m = active.indices.len();
    let vertices: Vec<Vec2> = (0..m)
        .map(|t| corner(grid, values, active.indices[t], active.indices[(t + 1) % m]))
        .collect();
    let cloud_tol = tol_geom(vertices.iter().fold(0.0_f64, |a, v| a.max(v.x.abs()).max(v.y.abs())));
    let mut merged: Vec<Vec2> = Vec::with_capacity(m);
    for v in vertices {
        if merged.last().is_none_or(|p: &Vec2| (p - v).norm() > cloud_tol) {
            merged.push(v);
        }
    }
    ConvexPolygon::from_points(&merged)
}

/// Support sample of the halfplane intersection of `values`: the largest
/// support sample that is pointwise at most `values`.
///
/// Values already in the cone at the default tolerance are returned as-is,
/// which makes the map idempotent.
pub fn regularize(values: &[f64], grid: &DirectionGrid) -> Result<SupportSample> {
    if is_in_cone(values, grid, tol_cone(values))?.is_inside() {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        return Ok(SupportSample::new_unchecked(*grid, values.to_vec()));
    }
    let active = reduce(grid, values)?;
    let n = grid.len();
    let m = active.indices.len();
    let mut out = values.to_vec();
    for t in 0..m {
        let i = active.indices[t];
        let k = active.indices[(t + 1) % m];
        let v = corner(grid, values, i, k);
        let mut j = grid.next(i);
        while j != k {
            out[j] = grid.direction(j).dot(&v);
            j = (j + 1) % n;
        }
    }
    Ok(SupportSample::new_unchecked(*grid, out))
}
