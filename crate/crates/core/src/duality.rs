//! Semi-inner product on grid functions and the duality map restricted to
//! single-atom measures.
//!
//! On a finite grid every norming functional of `g` is a signed combination of
//! point masses on the indices where `|g|` peaks, so the infimum defining
//! `<f, g>_-` is a finite minimum over those atoms.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::DirectionGrid;
use crate::polygon::{hausdorff_exact, one_sided_distance, realizing_pairs, ConvexPolygon};
use crate::support::SupportDelta;
use crate::tolerance::{tol_geom, REL_TOL};

/// Default plateau tolerance `1e-9 * max(1, ||g||_inf)`.
pub fn default_tol_ext(g: &SupportDelta) -> f64 {
    REL_TOL * g.norm_inf().max(1.0)
}

/// Indices where `f` attains `+||f||` (positive) or `-||f||` (negative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalSets {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
}

pub fn extremal_sets(f: &SupportDelta, tol_ext: f64) -> ExtremalSets {
    let norm = f.norm_inf();
    let n = f.grid().len();
    if norm <= tol_ext {
        return ExtremalSets { positive: (0..n).collect(), negative: (0..n).collect() };
    }
    let v = f.values();
    ExtremalSets {
        positive: (0..n).filter(|&i| v[i] >= norm - tol_ext).collect(),
        negative: (0..n).filter(|&i| v[i] <= -norm + tol_ext).collect(),
    }
}

/// Real number or the `+inf` of an empty minimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MinOrInfinite {
    Finite(f64),
    Infinite,
}

impl MinOrInfinite {
    fn of(values: impl Iterator<Item = f64>) -> Self {
        values.fold(MinOrInfinite::Infinite, |acc, x| match acc {
            MinOrInfinite::Infinite => MinOrInfinite::Finite(x),
            MinOrInfinite::Finite(m) => MinOrInfinite::Finite(m.min(x)),
        })
    }

    fn min(self, other: Self) -> Self {
        match (self, other) {
            (MinOrInfinite::Finite(a), MinOrInfinite::Finite(b)) => MinOrInfinite::Finite(a.min(b)),
            (MinOrInfinite::Infinite, x) | (x, MinOrInfinite::Infinite) => x,
        }
    }
}

/// `<f, g>_- = ||g|| * min(min_{E+(g)} f, min_{E-(g)} -f)`, empty minima
/// counting as `+inf`.
pub fn semi_inner(f: &SupportDelta, g: &SupportDelta, tol_ext: f64) -> Result<f64> {
    f.grid().check_same(g.grid())?;
    let norm = g.norm_inf();
    if norm <= tol_ext {
        return Ok(0.0);
    }
    let sets = extremal_sets(g, tol_ext);
    let fv = f.values();
    let pos = MinOrInfinite::of(sets.positive.iter().map(|&i| fv[i]));
    let neg = MinOrInfinite::of(sets.negative.iter().map(|&i| -fv[i]));
    match pos.min(neg) {
        MinOrInfinite::Finite(m) => Ok(norm * m),
        MinOrInfinite::Infinite => Err(Error::EmptyExtremalSets),
    }
}

/// Signed measure with finitely many atoms on grid indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteMeasure {
    pub atoms: Vec<(usize, f64)>,
}

impl DiscreteMeasure {
    /// Rejects repeated indices.
    pub fn new(atoms: Vec<(usize, f64)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (idx, w) in &atoms {
            if !seen.insert(*idx) {
                return Err(Error::InvalidParameter(format!("repeated atom index {idx}")));
            }
            if !w.is_finite() {
                return Err(Error::NonFinite(*idx));
            }
        }
        Ok(Self { atoms })
    }

    pub fn dirac(index: usize, weight: f64) -> Self {
        Self { atoms: vec![(index, weight)] }
    }

    pub fn total_variation(&self) -> f64 {
        self.atoms.iter().map(|(_, w)| w.abs()).sum()
    }

    /// `mu(f) = sum_i w_i f(i)`.
    pub fn apply(&self, f: &SupportDelta) -> f64 {
        self.atoms.iter().map(|(i, w)| w * f.values()[*i]).sum()
    }
}

/// Single-atom elements of `J(g)`: `+||g|| delta_i` on the positive extremal
/// set and `-||g|| delta_i` on the negative one.
pub fn dual_representatives(g: &SupportDelta, tol_ext: f64) -> Result<Vec<DiscreteMeasure>> {
    let norm = g.norm_inf();
    if norm <= tol_ext {
        return Err(Error::ZeroFunction);
    }
    let sets = extremal_sets(g, tol_ext);
    Ok(sets
        .positive
        .iter()
        .map(|&i| DiscreteMeasure::dirac(i, norm))
        .chain(sets.negative.iter().map(|&i| DiscreteMeasure::dirac(i, -norm)))
        .collect())
}

/// Grid indices nearest to the directions `(a* - b*)/|a* - b*|` of all
/// vertex pairs realizing `dist(A, B) = dist_H(A, B)`.
pub fn hausdorff_realizing_directions(
    a: &ConvexPolygon,
    b: &ConvexPolygon,
    grid: &DirectionGrid,
    tol: f64,
) -> Result<Vec<usize>> {
    let one_sided = one_sided_distance(a, b);
    let tol = tol.max(tol_geom(a.magnitude().max(b.magnitude())));
    if one_sided <= tol {
        return Err(Error::Contained);
    }
    let hausdorff = hausdorff_exact(a, b);
    if one_sided < hausdorff - tol {
        return Err(Error::AsymmetricDistance { one_sided, hausdorff });
    }
    let mut out = BTreeSet::new();
    for (x, y) in realizing_pairs(a, b, tol) {
        out.insert(grid.nearest_index(x - y).0);
    }
    Ok(out.into_iter().collect())
}
