//! Relaxation toward the square `Q = [-1, 1]^2`: `f(t, sigma) = sigma_Q - sigma`.
//!
//! Solutions are `A(t) = e^{-t} A0 + (1 - e^{-t}) Q`. A rectangle start gives
//! a first type differentiable curve when both widths are at most 2 and a
//! second type one when both are at least 2.

use super::field::RelaxTo;
use crate::error::{Error, Result};
use crate::grid::DirectionGrid;
use crate::hukuhara::{HukuharaClass, SetCurve};
use crate::polygon::ConvexPolygon;
use crate::support::{support_of_polygon, SupportSample};

/// Side length of the target square.
pub const TARGET_WIDTH: f64 = 2.0;

pub fn square_target() -> ConvexPolygon {
    ConvexPolygon::rectangle(-1.0, 1.0, -1.0, 1.0).expect("ordered bounds")
}

/// A starting rectangle and the classification its widths predict.
#[derive(Debug, Clone, PartialEq)]
pub struct ExampleStart {
    pub name: &'static str,
    pub set: ConvexPolygon,
    pub widths: [f64; 2],
    pub expected: HukuharaClass,
}

/// `[2,3]x[1,2]`, `[0,3.5]x[-1.5,2.5]` and `[-1.5,3.5]x[-0.5,0]`.
pub fn initial_rectangles() -> [ExampleStart; 3] {
    let make = |name, x0, x1, y0, y1| {
        let widths = [x1 - x0, y1 - y0];
        ExampleStart {
            name,
            set: ConvexPolygon::rectangle(x0, x1, y0, y1).expect("ordered bounds"),
            widths,
            expected: predicted_class(widths),
        }
    };
    [
        make("curve1", 2.0, 3.0, 1.0, 2.0),
        make("curve2", 0.0, 3.5, -1.5, 2.5),
        make("curve3", -1.5, 3.5, -0.5, 0.0),
    ]
}

/// Both widths at most the target width.
pub fn shrinks_into_target(widths: [f64; 2]) -> bool {
    widths[0].max(widths[1]) <= TARGET_WIDTH
}

/// Both widths at least the target width.
pub fn contains_target_shape(widths: [f64; 2]) -> bool {
    widths[0].min(widths[1]) >= TARGET_WIDTH
}

pub fn predicted_class(widths: [f64; 2]) -> HukuharaClass {
    match (shrinks_into_target(widths), contains_target_shape(widths)) {
        (true, true) => HukuharaClass::Both,
        (true, false) => HukuharaClass::FirstType,
        (false, true) => HukuharaClass::SecondType,
        (false, false) => HukuharaClass::Neither,
    }
}

pub fn relax_field(grid: &DirectionGrid) -> RelaxTo {
    RelaxTo { target: support_of_polygon(&square_target(), grid) }
}

/// `e^{-t} sigma_{A0} + (1 - e^{-t}) sigma_Q` on `grid`.
pub fn closed_form_example(
    a0: &ConvexPolygon,
    q: &ConvexPolygon,
    t: f64,
    grid: &DirectionGrid,
) -> Result<SupportSample> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!("time must be nonnegative, got {t}")));
    }
    let decay = (-t).exp();
    let rise = -(-t).exp_m1();
    let sa = support_of_polygon(a0, grid);
    let sq = support_of_polygon(q, grid);
    let values = sa.values().iter().zip(sq.values()).map(|(a, b)| decay * a + rise * b).collect();
    Ok(SupportSample::new_unchecked(*grid, values))
}

/// Closed-form curve at `t_k = k * h`, `k = 0..=steps`.
pub fn closed_form_curve(a0: &ConvexPolygon, grid: &DirectionGrid, h: f64, steps: usize) -> Result<SetCurve> {
    let q = square_target();
    let times: Vec<f64> = (0..=steps).map(|k| k as f64 * h).collect();
    let samples = times
        .iter()
        .map(|&t| closed_form_example(a0, &q, t, grid))
        .collect::<Result<Vec<_>>>()?;
    SetCurve::new(times, samples)
}
