//! Support functions sampled on a direction grid.
//!
//! A [`SupportSample`] is the restriction of `sigma_A(p) = max_{a in A} <p, a>`
//! to the grid; a [`SupportDelta`] is a difference of two such samples and
//! carries the full vector-space structure.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::grid::DirectionGrid;
use crate::polygon::ConvexPolygon;
use crate::tolerance::{norm_inf, tol_cone};

/// Outcome of the discrete cone test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeCheck {
    /// Smallest index whose three-term value is below `-tol`.
    pub first_violation: Option<usize>,
    /// `max(0, -min_i term_i)`: the worst violation regardless of `tol`.
    pub residual: f64,
}

impl ConeCheck {
    pub fn is_inside(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// `s_{i-1} + s_{i+1} - 2 cos(spacing) s_i` at index `i`.
#[inline]
pub(crate) fn cone_term(grid: &DirectionGrid, values: &[f64], i: usize) -> f64 {
    let c2 = 2.0 * grid.cos_spacing();
    values[grid.prev(i)] + values[grid.next(i)] - c2 * values[i]
}

/// Discrete convexity test of the positive homogeneous extension.
pub fn is_in_cone(values: &[f64], grid: &DirectionGrid, tol: f64) -> Result<ConeCheck> {
    if values.len() != grid.len() {
        return Err(Error::LengthMismatch { expected: grid.len(), actual: values.len() });
    }
    let mut first_violation = None;
    let mut worst = 0.0_f64;
    for i in 0..grid.len() {
        let term = cone_term(grid, values, i);
        if term < -tol && first_violation.is_none() {
            first_violation = Some(i);
        }
        worst = worst.max(-term);
    }
    Ok(ConeCheck { first_violation, residual: worst })
}

/// Worst three-term violation, zero inside the cone.
pub fn cone_residual(values: &[f64], grid: &DirectionGrid) -> f64 {
    (0..grid.len())
        .map(|i| -cone_term(grid, values, i))
        .fold(0.0, f64::max)
}

fn check_values(grid: &DirectionGrid, values: &[f64]) -> Result<()> {
    if values.len() != grid.len() {
        return Err(Error::LengthMismatch { expected: grid.len(), actual: values.len() });
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    Ok(())
}

/// Grid values of a support function; always passes the cone test at the
/// default tolerance when built through a checked constructor.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportSample {
    grid: DirectionGrid,
    values: Vec<f64>,
}

impl SupportSample {
    pub fn new(grid: DirectionGrid, values: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(grid, values, None)
    }

    /// Like [`SupportSample::new`] with an explicit cone tolerance.
    pub fn with_tolerance(grid: DirectionGrid, values: Vec<f64>, tol: Option<f64>) -> Result<Self> {
        check_values(&grid, &values)?;
        let tol = tol.unwrap_or_else(|| tol_cone(&values));
        let check = is_in_cone(&values, &grid, tol)?;
        if let Some(index) = check.first_violation {
            return Err(Error::NotInCone { index, term: cone_term(&grid, &values, index) });
        }
        Ok(Self { grid, values })
    }

    /// Skips the cone test. Used for intermediate integrator stages and by
    /// callers that have already validated the values.
    pub fn new_unchecked(grid: DirectionGrid, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }

    /// Support function `{0}`, identically zero.
    pub fn zero(grid: DirectionGrid) -> Self {
        Self { grid, values: vec![0.0; grid.len()] }
    }

    /// Support of the closed disc of radius `r >= 0` around the origin.
    pub fn disc(grid: DirectionGrid, r: f64) -> Result<Self> {
        if r < 0.0 {
            return Err(Error::NegativeScalar(r));
        }
        Ok(Self { grid, values: vec![r; grid.len()] })
    }

    pub fn grid(&self) -> &DirectionGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn norm_inf(&self) -> f64 {
        norm_inf(&self.values)
    }

    pub fn as_delta(&self) -> SupportDelta {
        SupportDelta { grid: self.grid, values: self.values.clone() }
    }

    /// Width `sigma(p) + sigma(-p)` in every grid direction (even grids only).
    pub fn widths(&self) -> Option<Vec<f64>> {
        let g = self.grid;
        (0..g.len())
            .map(|i| g.antipode(i).map(|j| self.values[i] + self.values[j]))
            .collect()
    }
}

/// `sigma_P` on the grid: the largest vertex projection in each direction.
pub fn support_of_polygon(poly: &ConvexPolygon, grid: &DirectionGrid) -> SupportSample {
    let values = grid.directions().map(|d| poly.support(d)).collect();
    SupportSample { grid: *grid, values }
}

/// `sigma_{A+B} = sigma_A + sigma_B`.
pub fn minkowski_add(a: &SupportSample, b: &SupportSample) -> Result<SupportSample> {
    a.grid.check_same(&b.grid)?;
    let values = a.values.iter().zip(&b.values).map(|(x, y)| x + y).collect();
    Ok(SupportSample { grid: a.grid, values })
}

/// `sigma_{lambda A} = lambda sigma_A` for `lambda >= 0`.
pub fn scale(a: &SupportSample, lambda: f64) -> Result<SupportSample> {
    if !(lambda >= 0.0) {
        return Err(Error::NegativeScalar(lambda));
    }
    let values = a.values.iter().map(|x| lambda * x).collect();
    Ok(SupportSample { grid: a.grid, values })
}

/// `max_i |a_i - b_i|`, a lower bound on the Hausdorff distance of the sets.
pub fn hausdorff_grid(a: &SupportSample, b: &SupportSample) -> Result<f64> {
    a.grid.check_same(&b.grid)?;
    Ok(a.values.iter().zip(&b.values).fold(0.0, |m, (x, y)| m.max((x - y).abs())))
}

/// Difference of two support samples; any real vector on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportDelta {
    grid: DirectionGrid,
    values: Vec<f64>,
}

impl SupportDelta {
    pub fn new(grid: DirectionGrid, values: Vec<f64>) -> Result<Self> {
        check_values(&grid, &values)?;
        Ok(Self { grid, values })
    }

    pub fn zero(grid: DirectionGrid) -> Self {
        Self { grid, values: vec![0.0; grid.len()] }
    }

    /// `a - b` for two samples on the same grid.
    pub fn between(a: &SupportSample, b: &SupportSample) -> Result<Self> {
        a.grid.check_same(&b.grid)?;
        let values = a.values.iter().zip(&b.values).map(|(x, y)| x - y).collect();
        Ok(Self { grid: a.grid, values })
    }

    pub(crate) fn from_raw(grid: DirectionGrid, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }

    pub fn grid(&self) -> &DirectionGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn norm_inf(&self) -> f64 {
        norm_inf(&self.values)
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Cone test of the delta with tolerance `tol`.
    pub fn cone_check(&self, tol: f64) -> ConeCheck {
        is_in_cone(&self.values, &self.grid, tol).expect("lengths agree by construction")
    }

    /// The delta as a support sample, if it lies in the cone within `tol`.
    pub fn to_sample(&self, tol: f64) -> Option<SupportSample> {
        self.cone_check(tol)
            .is_inside()
            .then(|| SupportSample { grid: self.grid, values: self.values.clone() })
    }

    pub fn try_add(&self, other: &SupportDelta) -> Result<SupportDelta> {
        self.grid.check_same(&other.grid)?;
        Ok(self.zip_with(other, |x, y| x + y))
    }

    pub fn try_sub(&self, other: &SupportDelta) -> Result<SupportDelta> {
        self.grid.check_same(&other.grid)?;
        Ok(self.zip_with(other, |x, y| x - y))
    }

    fn zip_with(&self, other: &SupportDelta, f: impl Fn(f64, f64) -> f64) -> SupportDelta {
        let values = self.values.iter().zip(&other.values).map(|(x, y)| f(*x, *y)).collect();
        SupportDelta { grid: self.grid, values }
    }
}

impl Neg for SupportDelta {
    type Output = SupportDelta;

    fn neg(mut self) -> SupportDelta {
        self.values.iter_mut().for_each(|v| *v = -*v);
        self
    }
}

impl Neg for &SupportDelta {
    type Output = SupportDelta;

    fn neg(self) -> SupportDelta {
        -self.clone()
    }
}

impl Mul<f64> for &SupportDelta {
    type Output = SupportDelta;

    fn mul(self, rhs: f64) -> SupportDelta {
        SupportDelta { grid: self.grid, values: self.values.iter().map(|v| v * rhs).collect() }
    }
}

/// Panics on grid mismatch; use [`SupportDelta::try_add`] for fallible code.
impl Add for &SupportDelta {
    type Output = SupportDelta;

    fn add(self, rhs: &SupportDelta) -> SupportDelta {
        self.try_add(rhs).expect("grid mismatch")
    }
}

/// Panics on grid mismatch; use [`SupportDelta::try_sub`] for fallible code.
impl Sub for &SupportDelta {
    type Output = SupportDelta;

    fn sub(self, rhs: &SupportDelta) -> SupportDelta {
        self.try_sub(rhs).expect("grid mismatch")
    }
}
