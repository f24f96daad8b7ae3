//! Set-valued ODEs in the plane, solved as ODEs on sampled support functions.
//!
//! A compact convex set `A` is represented by its support function
//! `sigma_A(p) = max_{a in A} <p, a>` sampled on an equally spaced
//! [`DirectionGrid`]. Minkowski sums and nonnegative scalings become vector
//! operations and the Hausdorff distance becomes the sup norm, so a set
//! evolution is an ODE on the cone of valid samples.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod duality;
pub mod dynamics;
pub mod error;
pub mod exchange;
pub mod grid;
pub mod hukuhara;
pub mod par;
pub mod polygon;
pub mod reconstruct;
pub mod sampling;
pub mod support;
pub mod tolerance;

pub use duality::{
    dual_representatives, extremal_sets, hausdorff_realizing_directions, semi_inner,
    DiscreteMeasure, ExtremalSets,
};
pub use error::{Error, Result};
pub use grid::{DirectionGrid, Vec2};
pub use hukuhara::{
    classify_curve, classify_step, hukuhara_difference, hukuhara_differential,
    second_type_differential, time_reverse, HukuharaClass, SetCurve,
};
pub use par::Execution;
pub use polygon::{farthest_realizer, hausdorff_exact, project_point, ConvexPolygon};
pub use reconstruct::{reconstruct_polygon, regularize};
pub use support::{
    hausdorff_grid, is_in_cone, minkowski_add, scale, support_of_polygon, SupportDelta,
    SupportSample,
};
