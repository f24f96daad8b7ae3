//! Right-hand sides `f(t, sigma)` and growth functions `omega(t, s)`.

use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::support::{SupportDelta, SupportSample};

/// Evaluation contract for `d/dt sigma = f(t, sigma)`.
///
/// Implementations must be deterministic and free of hidden mutable state so
/// that independent trajectories can share a field across threads.
pub trait RhsField: Send + Sync {
    /// Output lives on the grid of `sigma`; a field bound to another grid
    /// returns `GridMismatch`.
    fn eval(&self, t: f64, sigma: &SupportSample) -> Result<SupportDelta>;

    fn name(&self) -> &str;

    /// Declared Lipschitz constant in the sup norm, if known.
    fn lipschitz(&self) -> Option<f64> {
        None
    }
}

/// `f(t, sigma) = target - sigma`; every solution relaxes to `target`.
#[derive(Debug, Clone)]
pub struct RelaxTo {
    pub target: SupportSample,
}

impl RhsField for RelaxTo {
    fn eval(&self, _t: f64, sigma: &SupportSample) -> Result<SupportDelta> {
        SupportDelta::between(&self.target, sigma)
    }

    fn name(&self) -> &str {
        "relax_to"
    }

    fn lipschitz(&self) -> Option<f64> {
        Some(1.0)
    }
}

/// `f(t, sigma) = delta`.
#[derive(Debug, Clone)]
pub struct Constant {
    pub delta: SupportDelta,
}

impl RhsField for Constant {
    fn eval(&self, _t: f64, sigma: &SupportSample) -> Result<SupportDelta> {
        self.delta.grid().check_same(sigma.grid())?;
        Ok(self.delta.clone())
    }

    fn name(&self) -> &str {
        "constant"
    }

    fn lipschitz(&self) -> Option<f64> {
        Some(0.0)
    }
}

/// `f(t, sigma) = state_coeff * sigma + target_coeff * target`.
#[derive(Debug, Clone)]
pub struct Affine {
    pub state_coeff: f64,
    pub target_coeff: f64,
    pub target: SupportSample,
}

impl RhsField for Affine {
    fn eval(&self, _t: f64, sigma: &SupportSample) -> Result<SupportDelta> {
        self.target.grid().check_same(sigma.grid())?;
        let values = sigma
            .values()
            .iter()
            .zip(self.target.values())
            .map(|(s, q)| self.state_coeff * s + self.target_coeff * q)
            .collect();
        SupportDelta::new(*sigma.grid(), values)
    }

    fn name(&self) -> &str {
        "affine"
    }

    fn lipschitz(&self) -> Option<f64> {
        Some(self.state_coeff.abs())
    }
}

type FieldFn = dyn Fn(f64, &SupportSample) -> Result<SupportDelta> + Send + Sync;

/// Field backed by a closure.
#[derive(Clone)]
pub struct FnField {
    name: String,
    lipschitz: Option<f64>,
    f: Arc<FieldFn>,
}

impl FnField {
    pub fn new<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64, &SupportSample) -> Result<SupportDelta> + Send + Sync + 'static,
    {
        Self { name: name.into(), lipschitz: None, f: Arc::new(f) }
    }

    pub fn with_lipschitz(mut self, l: f64) -> Self {
        self.lipschitz = Some(l);
        self
    }
}

impl fmt::Debug for FnField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnField").field("name", &self.name).finish_non_exhaustive()
    }
}

impl RhsField for FnField {
    fn eval(&self, t: f64, sigma: &SupportSample) -> Result<SupportDelta> {
        (self.f)(t, sigma)
    }

    fn name(&self) -> &str {
        &self.name
    }

    fn lipschitz(&self) -> Option<f64> {
        self.lipschitz
    }
}

/// Declared class of a growth function. Membership is taken on trust.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthClass {
    U0,
    U1,
    Unchecked,
}

type GrowthFn = dyn Fn(f64, f64) -> f64 + Send + Sync;

#[derive(Clone)]
pub struct GrowthFunction {
    class: GrowthClass,
    f: Arc<GrowthFn>,
}

impl GrowthFunction {
    pub fn new<F>(class: GrowthClass, f: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self { class, f: Arc::new(f) }
    }

    /// `omega(t, s) = l * s`.
    pub fn linear(l: f64) -> Self {
        Self::new(GrowthClass::U1, move |_, s| l * s)
    }

    /// `omega = 0`.
    pub fn zero() -> Self {
        Self::new(GrowthClass::U1, |_, _| 0.0)
    }

    pub fn eval(&self, t: f64, s: f64) -> f64 {
        (self.f)(t, s)
    }

    pub fn class(&self) -> GrowthClass {
        self.class
    }
}

impl fmt::Debug for GrowthFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GrowthFunction").field("class", &self.class).finish_non_exhaustive()
    }
}
