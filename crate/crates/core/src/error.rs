use thiserror::Error;

/// Errors raised by the support-function calculus and the integrators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("direction grid needs at least 3 directions, got {0}")]
    GridTooSmall(usize),
    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("grid mismatch: {left} vs {right} directions")]
    GridMismatch { left: usize, right: usize },
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("values violate the discrete cone condition at index {index} (term {term:e})")]
    NotInCone { index: usize, term: f64 },
    #[error("halfspace intersection is empty")]
    EmptyIntersection,
    #[error("negative scale factor {0}")]
    NegativeScalar(f64),
    #[error("polygon has no vertices")]
    EmptyPolygon,
    #[error("polygon is not convex and counterclockwise at vertex {0}")]
    NotConvex(usize),
    #[error("first set is contained in the second; no realizing direction")]
    Contained,
    #[error("one-sided distance {one_sided} is below the Hausdorff distance {hausdorff}")]
    AsymmetricDistance { one_sided: f64, hausdorff: f64 },
    #[error("duality map of the zero function has no single-atom representatives")]
    ZeroFunction,
    #[error("both extremal sets are empty")]
    EmptyExtremalSets,
    #[error("index {index} is not interior to a curve with {len} samples")]
    BoundaryIndex { index: usize, len: usize },
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("field has zero magnitude on the sampled region; horizon is {horizon}")]
    DegenerateField { horizon: f64 },
    #[error("sets are within tolerance of each other (Hausdorff distance {0:e})")]
    Degenerate(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
