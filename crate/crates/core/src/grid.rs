use std::f64::consts::{PI, TAU};

use nalgebra::Vector2;

use crate::error::{Error, Result};

pub type Vec2 = Vector2<f64>;

/// `n` equally spaced unit directions on the circle, `angle_i = 2*pi*i/n`.
///
/// Directions that fall on the coordinate axes are exact, and for even `n`
/// the second half of the grid is the exact negation of the first half, so
/// antipodal symmetry holds bit for bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DirectionGrid {
    n: usize,
}

impl DirectionGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::GridTooSmall(n));
        }
        Ok(Self { n })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Angular spacing `2*pi/n`.
    #[inline]
    pub fn spacing(&self) -> f64 {
        TAU / self.n as f64
    }

    pub fn angle(&self, i: usize) -> f64 {
        TAU * (i % self.n) as f64 / self.n as f64
    }

    pub fn direction(&self, i: usize) -> Vec2 {
        let i = i % self.n;
        if self.n.is_multiple_of(2) && i >= self.n / 2 {
            return -self.base_direction(i - self.n / 2);
        }
        self.base_direction(i)
    }

    fn base_direction(&self, i: usize) -> Vec2 {
        if (4 * i).is_multiple_of(self.n) {
            return match (4 * i) / self.n {
                0 => Vec2::new(1.0, 0.0),
                1 => Vec2::new(0.0, 1.0),
                2 => Vec2::new(-1.0, 0.0),
                _ => Vec2::new(0.0, -1.0),
            };
        }
        let (s, c) = self.angle(i).sin_cos();
        Vec2::new(c, s)
    }

    pub fn directions(&self) -> impl Iterator<Item = Vec2> + '_ {
        (0..self.n).map(move |i| self.direction(i))
    }

    /// `cos(spacing)`, exact zero on a four-direction grid.
    pub fn cos_spacing(&self) -> f64 {
        self.direction(1).x
    }

    /// `sin(k * spacing)` for an index offset `k`.
    pub fn sin_steps(&self, k: usize) -> f64 {
        self.direction(k).y
    }

    /// Antipodal index `i + n/2`; `None` on odd grids.
    pub fn antipode(&self, i: usize) -> Option<usize> {
        self.n.is_multiple_of(2).then(|| (i + self.n / 2) % self.n)
    }

    /// Index of the grid direction closest in angle to `p`, and the angular
    /// error of that snap.
    pub fn nearest_index(&self, p: Vec2) -> (usize, f64) {
        let theta = p.y.atan2(p.x).rem_euclid(TAU);
        let k = (theta / self.spacing()).round() as usize % self.n;
        let mut err = (theta - self.angle(k)).abs();
        if err > PI {
            err = TAU - err;
        }
        (k, err)
    }

    pub fn check_same(&self, other: &DirectionGrid) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GridMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub(crate) fn prev(&self, i: usize) -> usize {
        (i + self.n - 1) % self.n
    }

    pub(crate) fn next(&self, i: usize) -> usize {
        (i + 1) % self.n
    }
}
