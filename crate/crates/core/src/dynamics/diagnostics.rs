//! Sampled diagnostics for existence and uniqueness hypotheses.
//!
//! Everything here except [`subtangent_feasible`] is an estimate over a
//! deterministic sample, never a certificate.

use super::field::{GrowthFunction, RhsField};
use crate::error::{Error, Result};
use crate::grid::{DirectionGrid, Vec2};
use crate::par::Execution;
use crate::polygon::{hausdorff_exact, one_sided_distance, realizing_pairs, ConvexPolygon};
use crate::sampling::{ball_point, random_cone_point, stream, DEFAULT_SEED};
use crate::support::{cone_term, support_of_polygon, SupportDelta, SupportSample};
use crate::tolerance::{norm_inf, tol_geom};

/// Sample budget, seed and execution strategy of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub samples: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self { samples: 256, seed: DEFAULT_SEED, execution: Execution::default() }
    }
}

/// Feasible multipliers `lambda` in `[lo, hi]` (`hi = None` for unbounded).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaInterval {
    pub lo: f64,
    pub hi: Option<f64>,
}

impl LambdaInterval {
    pub fn contains(&self, lambda: f64) -> bool {
        lambda >= self.lo && self.hi.is_none_or(|hi| lambda <= hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Subtangent {
    Feasible(LambdaInterval),
    /// `index` is a direction whose constraint cannot be met together with
    /// the others.
    Infeasible { index: usize },
}

impl Subtangent {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Subtangent::Feasible(_))
    }
}

/// All `lambda >= 0` with `v + lambda * sigma` in the discrete cone within
/// `tol`.
///
/// Direction `i` contributes `a_i + lambda b_i >= -tol` with `a`, `b` the
/// three-term cone expressions of `v` and `sigma`. Terms `b_i` at rounding
/// level count as zero.
pub fn subtangent_feasible(v: &SupportDelta, sigma: &SupportSample, tol: f64) -> Result<Subtangent> {
    let grid = sigma.grid();
    grid.check_same(v.grid())?;
    let flat = 64.0 * f64::EPSILON * norm_inf(sigma.values()).max(1.0);
    let mut lo = 0.0_f64;
    let mut lo_index = None;
    let mut hi: Option<(f64, usize)> = None;
    for i in 0..grid.len() {
        let a = cone_term(grid, v.values(), i);
        let b = cone_term(grid, sigma.values(), i);
        if b.abs() <= flat {
            if a < -tol {
                return Ok(Subtangent::Infeasible { index: i });
            }
        } else if b > 0.0 {
            let bound = (-tol - a) / b;
            if bound > lo {
                lo = bound;
                lo_index = Some(i);
            }
        } else {
            let bound = (-tol - a) / b;
            if hi.is_none_or(|(h, _)| bound < h) {
                hi = Some((bound, i));
            }
        }
    }
    match hi {
        Some((h, i)) if h < lo => Ok(Subtangent::Infeasible { index: lo_index.unwrap_or(i) }),
        _ => Ok(Subtangent::Feasible(LambdaInterval { lo, hi: hi.map(|(h, _)| h) })),
    }
}

/// Sampled bound `c` on `||f||` and the horizon `b = min(T, r / c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Horizon {
    pub c: f64,
    pub b: f64,
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Time and state of sample `k`: the center at both ends of `[0, T]`,
/// otherwise a golden-ratio time and a ball point around `sigma0`.
pub fn horizon_sample(sigma0: &SupportSample, r: f64, t_max: f64, seed: u64, k: usize) -> (f64, SupportSample) {
    match k {
        0 => (0.0, sigma0.clone()),
        1 => (t_max, sigma0.clone()),
        _ => {
            let t = t_max * (k as f64 * GOLDEN).fract();
            (t, ball_point(&mut stream(seed, k as u64), sigma0, r))
        }
    }
}

/// Empirical `c = max ||f(t, sigma)||_inf` over [`horizon_sample`]s and
/// `b = min(T, r / c)`.
pub fn existence_horizon(
    f: &dyn RhsField,
    sigma0: &SupportSample,
    r: f64,
    t_max: f64,
    cfg: &SweepConfig,
) -> Result<Horizon> {
    if !(r > 0.0 && t_max > 0.0) {
        return Err(Error::InvalidParameter("radius and horizon must be positive".into()));
    }
    let norms = cfg.execution.map_range(cfg.samples.max(2), |k| {
        let (t, s) = horizon_sample(sigma0, r, t_max, cfg.seed, k);
        f.eval(t, &s).map(|d| d.norm_inf())
    });
    let mut c = 0.0_f64;
    for n in norms {
        c = c.max(n?);
    }
    if c == 0.0 {
        return Err(Error::DegenerateField { horizon: t_max });
    }
    Ok(Horizon { c, b: t_max.min(r / c) })
}

/// Which realizing-pair condition a candidate belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OslCase {
    /// `a` in `A` farthest from `B`; tested at `p`.
    Forward,
    /// `b` in `B` farthest from `A`; tested at `-p`.
    Backward,
}

/// One evaluated instance of the one-sided Lipschitz inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OslCandidate {
    pub case: OslCase,
    pub a: Vec2,
    pub b: Vec2,
    /// Grid index the test direction was snapped to.
    pub index: usize,
    pub snap_error: f64,
    /// Left-hand side `f(t, sigma_A)(p) - f(t, sigma_B)(p)` (or its mirror).
    pub lhs: f64,
    /// `omega(t, dist_H(A, B))`.
    pub bound: f64,
}

impl OslCandidate {
    pub fn gap(&self) -> f64 {
        self.lhs - self.bound
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OslReport {
    pub distance: f64,
    pub candidates: Vec<OslCandidate>,
    pub satisfied: bool,
}

impl OslReport {
    /// The most violated candidate, when no candidate holds.
    pub fn witness(&self) -> Option<&OslCandidate> {
        if self.satisfied {
            return None;
        }
        self.candidates.iter().fold(None, |best: Option<&OslCandidate>, c| match best {
            Some(b) if b.gap() >= c.gap() => Some(b),
            _ => Some(c),
        })
    }
}

/// Tests the realizing-pair conditions for one pair of sets at time `t`.
///
/// Each applicable condition is evaluated for every realizing vertex pair;
/// the report is satisfied when at least one evaluation holds within `tol`.
#[allow(clippy::too_many_arguments)]
pub fn osl_check(
    f: &dyn RhsField,
    a: &ConvexPolygon,
    b: &ConvexPolygon,
    t: f64,
    omega: &GrowthFunction,
    grid: &DirectionGrid,
    tol: f64,
) -> Result<OslReport> {
    let distance = hausdorff_exact(a, b);
    let tol = tol.max(tol_geom(a.magnitude().max(b.magnitude())));
    if distance <= tol {
        return Err(Error::Degenerate(distance));
    }
    let fa = f.eval(t, &support_of_polygon(a, grid))?;
    let fb = f.eval(t, &support_of_polygon(b, grid))?;
    let bound = omega.eval(t, distance);

    let mut candidates = Vec::new();
    if one_sided_distance(a, b) >= distance - tol {
        for (x, y) in realizing_pairs(a, b, tol) {
            let (index, snap_error) = grid.nearest_index(x - y);
            let lhs = fa.values()[index] - fb.values()[index];
            candidates.push(OslCandidate { case: OslCase::Forward, a: x, b: y, index, snap_error, lhs, bound });
        }
    }
    if one_sided_distance(b, a) >= distance - tol {
        for (y, x) in realizing_pairs(b, a, tol) {
            let (index, snap_error) = grid.nearest_index(y - x);
            let lhs = fb.values()[index] - fa.values()[index];
            candidates.push(OslCandidate { case: OslCase::Backward, a: x, b: y, index, snap_error, lhs, bound });
        }
    }
    let satisfied = candidates.iter().any(|c| c.gap() <= tol);
    Ok(OslReport { distance, candidates, satisfied })
}

/// Sample pair `k` for [`lipschitz_estimate`]: two independent random sets
/// for even `k`; for odd `k` a set and its point reflection `-A` (odd grids
/// fall back to an independent set).
pub fn lipschitz_pair(grid: &DirectionGrid, extent: f64, seed: u64, k: usize) -> (SupportSample, SupportSample) {
    let mut rng = stream(seed, k as u64);
    let s = random_cone_point(&mut rng, grid, extent);
    let reflected = (k % 2 == 1)
        .then(|| (0..grid.len()).map(|i| grid.antipode(i).map(|j| s.values()[j])).collect::<Option<Vec<f64>>>())
        .flatten();
    let other = match reflected {
        Some(values) => SupportSample::new_unchecked(*grid, values),
        None => random_cone_point(&mut rng, grid, extent),
    };
    (s, other)
}

/// Largest observed ratio `||f(t, s) - f(t, s')|| / ||s - s'||` over
/// [`lipschitz_pair`]s at times spread over `[0, t_max]`.
pub fn lipschitz_estimate(
    f: &dyn RhsField,
    grid: &DirectionGrid,
    t_max: f64,
    extent: f64,
    cfg: &SweepConfig,
) -> Result<f64> {
    if cfg.samples == 0 {
        return Err(Error::InvalidParameter("sample budget must be at least 1".into()));
    }
    let ratios = cfg.execution.map_range(cfg.samples, |k| -> Result<f64> {
        let (s, s2) = lipschitz_pair(grid, extent, cfg.seed, k);
        let t = t_max * (k as f64 * GOLDEN).fract();
        let denom = SupportDelta::between(&s, &s2)?.norm_inf();
        if denom <= tol_geom(s.norm_inf().max(s2.norm_inf())) {
            return Ok(0.0);
        }
        let num = f.eval(t, &s)?.try_sub(&f.eval(t, &s2)?)?.norm_inf();
        Ok(num / denom)
    });
    let mut best = 0.0_f64;
    for r in ratios {
        best = best.max(r?);
    }
    Ok(best)
}
