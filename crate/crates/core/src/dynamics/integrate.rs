//! Fixed-step explicit integration on the support cone.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::field::RhsField;
use crate::error::{Error, Result};
use crate::exchange::trajectory_csv;
use crate::hukuhara::SetCurve;
use crate::reconstruct::regularize;
use crate::support::{cone_residual, is_in_cone, SupportDelta, SupportSample};
use crate::tolerance::{tol_cone, DRIFT_FACTOR};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Euler,
    Rk4,
}

/// When to project a step back onto the cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegularizationPolicy {
    Never,
    /// Regularize when the residual exceeds `DRIFT_FACTOR * tol_cone`.
    #[default]
    OnViolation,
    Always,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    pub t0: f64,
    pub t_end: f64,
    pub h: f64,
    pub method: Method,
    pub policy: RegularizationPolicy,
}

impl IntegrateOptions {
    /// RK4 on `[0, t_end]` with the default policy.
    pub fn new(t_end: f64, h: f64) -> Self {
        Self { t0: 0.0, t_end, h, method: Method::Rk4, policy: RegularizationPolicy::default() }
    }

    pub fn method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn policy(mut self, policy: RegularizationPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn start(mut self, t0: f64) -> Self {
        self.t0 = t0;
        self
    }

    /// Step times `t0 + k h`, with the last step shortened to land on `t_end`.
    pub fn times(&self) -> Vec<f64> {
        let span = self.t_end - self.t0;
        let steps = ((span / self.h) * (1.0 - 1e-12)).ceil().max(1.0) as usize;
        let mut times: Vec<f64> = (0..steps).map(|k| self.t0 + k as f64 * self.h).collect();
        times.push(self.t_end);
        times
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.into()));
        if !(self.h > 0.0 && self.h.is_finite()) {
            return bad("step size must be positive and finite");
        }
        if !(self.t_end > self.t0 && self.t0.is_finite() && self.t_end.is_finite()) {
            return bad("final time must be finite and after the start time");
        }
        Ok(())
    }
}

/// Accepted states with per-step diagnostics. Entry 0 is the initial state.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub samples: Vec<SupportSample>,
    /// Worst three-term cone violation before regularization.
    pub residuals: Vec<f64>,
    pub regularized: Vec<bool>,
    /// Step that produced each state (0 for the initial state).
    pub steps: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<&SupportSample> {
        self.samples.last()
    }

    fn push(&mut self, t: f64, s: SupportSample, residual: f64, regularized: bool, step: f64) {
        self.times.push(t);
        self.samples.push(s);
        self.residuals.push(residual);
        self.regularized.push(regularized);
        self.steps.push(step);
    }

    /// The stored states as a set curve (cone test at the drift threshold).
    pub fn to_curve(&self) -> Result<SetCurve> {
        SetCurve::with_tolerance_factor(self.times.clone(), self.samples.clone(), DRIFT_FACTOR)
    }

    /// CSV with columns `t,residual,regularized,v0,...`.
    pub fn to_csv(&self) -> String {
        let n = self.samples.first().map_or(0, |s| s.grid().len());
        trajectory_csv(
            n,
            (0..self.len()).map(|k| {
                (self.times[k], self.residuals[k], self.regularized[k], self.samples[k].values().to_vec())
            }),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntegrationError {
    #[error("invalid integration setup: {0}")]
    Setup(Error),
    #[error("integration stopped at t = {time}: {error}")]
    Stopped { error: Error, time: f64, partial: Box<Trajectory> },
}

impl IntegrationError {
    pub fn error(&self) -> &Error {
        match self {
            IntegrationError::Setup(e) | IntegrationError::Stopped { error: e, .. } => e,
        }
    }
}

fn eval_checked(f: &dyn RhsField, t: f64, y: &SupportSample) -> Result<SupportDelta> {
    let k = f.eval(t, y)?;
    y.grid().check_same(k.grid())?;
    if let Some(i) = k.values().iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    Ok(k)
}

fn axpy(y: &SupportSample, a: f64, k: &SupportDelta) -> SupportSample {
    let values = y.values().iter().zip(k.values()).map(|(y, k)| y + a * k).collect();
    SupportSample::new_unchecked(*y.grid(), values)
}

/// One explicit step from `(t, y)` of size `h`.
pub fn step(f: &dyn RhsField, method: Method, t: f64, y: &SupportSample, h: f64) -> Result<Vec<f64>> {
    let values: Vec<f64> = match method {
        Method::Euler => {
            let k = eval_checked(f, t, y)?;
            y.values().iter().zip(k.values()).map(|(y, k)| y + h * k).collect()
        }
        Method::Rk4 => {
            let half = 0.5 * h;
            let k1 = eval_checked(f, t, y)?;
            let k2 = eval_checked(f, t + half, &axpy(y, half, &k1))?;
            let k3 = eval_checked(f, t + half, &axpy(y, half, &k2))?;
            let k4 = eval_checked(f, t + h, &axpy(y, h, &k3))?;
            let sixth = h / 6.0;
            (0..y.values().len())
                .map(|i| {
                    let slope = k1.values()[i]
                        + 2.0 * k2.values()[i]
                        + 2.0 * k3.values()[i]
                        + k4.values()[i];
                    y.values()[i] + sixth * slope
                })
                .collect()
        }
    };
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    Ok(values)
}

/// Integrates `d/dt sigma = f(t, sigma)` from `sigma0` with fixed steps.
///
/// On failure the states accepted so far are returned inside the error.
pub fn integrate(
    f: &dyn RhsField,
    sigma0: &SupportSample,
    opts: &IntegrateOptions,
) -> std::result::Result<Trajectory, IntegrationError> {
    opts.validate().map_err(IntegrationError::Setup)?;
    let grid = *sigma0.grid();
    let check = is_in_cone(sigma0.values(), &grid, tol_cone(sigma0.values()))
        .map_err(IntegrationError::Setup)?;
    if let Some(index) = check.first_violation {
        return Err(IntegrationError::Setup(Error::NotInCone { index, term: -check.residual }));
    }

    let times = opts.times();
    let mut traj = Trajectory::default();
    traj.push(times[0], sigma0.clone(), check.residual, false, 0.0);

    for w in times.windows(2) {
        let (t, t_next) = (w[0], w[1]);
        let h = t_next - t;
        let y = traj.samples.last().expect("initial state stored");
        let stopped = |error: Error, traj: &Trajectory| IntegrationError::Stopped {
            error,
            time: t,
            partial: Box::new(traj.clone()),
        };
        let values = match step(f, opts.method, t, y, h) {
            Ok(v) => v,
            Err(e) => return Err(stopped(e, &traj)),
        };
        let residual = cone_residual(&values, &grid);
        let apply = match opts.policy {
            RegularizationPolicy::Never => false,
            RegularizationPolicy::OnViolation => residual > DRIFT_FACTOR * tol_cone(&values),
            RegularizationPolicy::Always => true,
        };
        let next = if apply {
            match regularize(&values, &grid) {
                Ok(s) => s,
                Err(e) => return Err(stopped(e, &traj)),
            }
        } else {
            SupportSample::new_unchecked(grid, values)
        };
        traj.push(t_next, next, residual, apply, h);
    }
    Ok(traj)
}
