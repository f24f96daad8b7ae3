//! Seeded random generators for convex sets and cone points.
//!
//! Every sample is drawn from its own `ChaCha8` stream keyed by
//! `(seed, index)`, so batches are reproducible regardless of how they are
//! scheduled across threads.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grid::{DirectionGrid, Vec2};
use crate::polygon::ConvexPolygon;
use crate::reconstruct::regularize;
use crate::support::{support_of_polygon, SupportSample};

pub const DEFAULT_SEED: u64 = 0x5e7f_10f5;

/// Independent stream for item `index` of a batch.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Convex polygon from `vertices` points on a jittered circle of the given
/// radius around `center`.
pub fn random_convex_polygon<R: Rng>(
    rng: &mut R,
    center: Vec2,
    radius: f64,
    vertices: usize,
) -> ConvexPolygon {
    let pts: Vec<Vec2> = (0..vertices.max(1))
        .map(|_| {
            let a = rng.random_range(0.0..TAU);
            let r = radius * rng.random_range(0.3..1.0);
            center + Vec2::new(r * a.cos(), r * a.sin())
        })
        .collect();
    ConvexPolygon::from_points(&pts).expect("finite points")
}

/// Axis-aligned rectangle with corner in `[-extent, extent]^2` and side
/// lengths in `[0, max_side]`.
pub fn random_rectangle<R: Rng>(rng: &mut R, extent: f64, max_side: f64) -> ConvexPolygon {
    let x0 = rng.random_range(-extent..extent);
    let y0 = rng.random_range(-extent..extent);
    let w = rng.random_range(0.0..max_side);
    let h = rng.random_range(0.0..max_side);
    ConvexPolygon::rectangle(x0, x0 + w, y0, y0 + h).expect("ordered bounds")
}

/// A cone point within sup-distance `r` of `center`.
///
/// The draw mixes structured moves (translations, dilation by a disc, random
/// Minkowski combinations) with regularized random perturbations, each pulled
/// back toward `center` along a segment so it stays in the ball. Segments
/// between cone points stay in the cone.
pub fn ball_point<R: Rng>(rng: &mut R, center: &SupportSample, r: f64) -> SupportSample {
    let grid = *center.grid();
    let c = center.values();
    let raw: Vec<f64> = match rng.random_range(0..4u8) {
        0 => {
            let shift = Vec2::new(rng.random_range(-r..r), rng.random_range(-r..r));
            grid.directions().zip(c).map(|(d, v)| v + d.dot(&shift)).collect()
        }
        1 => {
            let rad = rng.random_range(0.0..=r);
            c.iter().map(|v| v + rad).collect()
        }
        2 => {
            let other = random_convex_polygon(rng, Vec2::zeros(), r.max(1e-3), 6);
            let s = support_of_polygon(&other, &grid);
            c.iter().zip(s.values()).map(|(a, b)| a + b).collect()
        }
        _ => {
            let noisy: Vec<f64> = c.iter().map(|v| v + r * rng.random_range(-1.0..1.0)).collect();
            match regularize(&noisy, &grid) {
                Ok(s) => s.into_values(),
                Err(_) => c.to_vec(),
            }
        }
    };
    let dist = raw.iter().zip(c).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
    let alpha = if dist > r { r / dist } else { 1.0 };
    let values = c.iter().zip(&raw).map(|(a, b)| a + alpha * (b - a)).collect();
    SupportSample::new_unchecked(grid, values)
}

/// Support sample of a random convex polygon.
pub fn random_cone_point<R: Rng>(rng: &mut R, grid: &DirectionGrid, extent: f64) -> SupportSample {
    let center = Vec2::new(rng.random_range(-extent..extent), rng.random_range(-extent..extent));
    let k = rng.random_range(1..9);
    let radius = rng.random_range(0.0..extent);
    let poly = random_convex_polygon(rng, center, radius, k);
    support_of_polygon(&poly, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::support::is_in_cone;
    use crate::tolerance::tol_cone;

    #[test]
    fn streams_are_reproducible() {
        let a: f64 = stream(7, 3).random();
        let b: f64 = stream(7, 3).random();
        let c: f64 = stream(7, 4).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn ball_points_stay_in_ball_and_cone() {
        let grid = DirectionGrid::new(64).unwrap();
        let center = support_of_polygon(&ConvexPolygon::rectangle(-1.0, 1.0, -1.0, 1.0).unwrap(), &grid);
        for i in 0..200 {
            let mut rng = stream(1, i);
            let s = ball_point(&mut rng, &center, 0.7);
            let d = s.values().iter().zip(center.values()).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
            assert!(d <= 0.7 + 1e-12);
            assert!(is_in_cone(s.values(), &grid, tol_cone(s.values())).unwrap().is_inside());
        }
    }
}
