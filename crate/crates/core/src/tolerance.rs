//! Scale-aware tolerances shared by all predicates.

/// Relative factor behind every default tolerance.
pub const REL_TOL: f64 = 1e-9;

/// Threshold multiplier used by [`crate::dynamics::RegularizationPolicy::OnViolation`].
pub const DRIFT_FACTOR: f64 = 10.0;

pub fn norm_inf(values: &[f64]) -> f64 {
    values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// `1e-9 * max(1, ||s||_inf)`.
pub fn tol_cone(values: &[f64]) -> f64 {
    REL_TOL * norm_inf(values).max(1.0)
}

/// `1e-9 * max(1, magnitude)` for coordinates of size `magnitude`.
pub fn tol_geom(magnitude: f64) -> f64 {
    REL_TOL * magnitude.abs().max(1.0)
}

/// True when `a` and `b` differ by at most `ulps` units in the last place of
/// `scale` (or of the larger of the two if that is bigger).
pub fn within_ulps(a: f64, b: f64, scale: f64, ulps: f64) -> bool {
    let s = scale.abs().max(a.abs()).max(b.abs());
    (a - b).abs() <= ulps * f64::EPSILON * s
}
