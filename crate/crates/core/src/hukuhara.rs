//! Hukuhara differences and first/second type Hukuhara differentials of
//! sampled set curves.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::DirectionGrid;
use crate::support::{SupportDelta, SupportSample};
use crate::tolerance::tol_cone;

/// `A ⊖_H B`: the sample `c` with `b + c = a`, if `a - b` is a support sample
/// within `tol`. The componentwise difference is the only candidate.
pub fn hukuhara_difference(
    a: &SupportSample,
    b: &SupportSample,
    tol: f64,
) -> Result<Option<SupportSample>> {
    Ok(SupportDelta::between(a, b)?.to_sample(tol))
}

/// Set-valued curve sampled at strictly increasing times on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SetCurve {
    times: Vec<f64>,
    samples: Vec<SupportSample>,
}

impl SetCurve {
    pub fn new(times: Vec<f64>, samples: Vec<SupportSample>) -> Result<Self> {
        Self::with_tolerance_factor(times, samples, 1.0)
    }

    /// Like [`SetCurve::new`] but accepts samples whose cone residual is up to
    /// `factor` times the default tolerance.
    pub fn with_tolerance_factor(
        times: Vec<f64>,
        samples: Vec<SupportSample>,
        factor: f64,
    ) -> Result<Self> {
        if times.len() != samples.len() {
            return Err(Error::InvalidCurve(format!(
                "{} times for {} samples",
                times.len(),
                samples.len()
            )));
        }
        if times.len() < 2 {
            return Err(Error::InvalidCurve("need at least two samples".into()));
        }
        if let Some(k) = times.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidCurve(format!("times not increasing at {}", k + 1)));
        }
        let grid = *samples[0].grid();
        for (k, s) in samples.iter().enumerate() {
            grid.check_same(s.grid())?;
            let check = s.as_delta().cone_check(factor * tol_cone(s.values()));
            if let Some(index) = check.first_violation {
                return Err(Error::InvalidCurve(format!(
                    "sample {k} leaves the cone at direction {index}"
                )));
            }
        }
        Ok(Self { times, samples })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn samples(&self) -> &[SupportSample] {
        &self.samples
    }

    pub fn grid(&self) -> &DirectionGrid {
        self.samples[0].grid()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn check_interior(&self, k: usize) -> Result<()> {
        if k == 0 || k + 1 >= self.len() {
            return Err(Error::BoundaryIndex { index: k, len: self.len() });
        }
        Ok(())
    }
}

/// Forward and backward difference quotients at an interior index.
#[derive(Debug, Clone, PartialEq)]
pub struct Quotients {
    pub forward: SupportDelta,
    pub backward: SupportDelta,
}

fn quotient(hi: &SupportSample, lo: &SupportSample, dt: f64) -> SupportDelta {
    let values = hi.values().iter().zip(lo.values()).map(|(a, b)| (a - b) / dt).collect();
    SupportDelta::from_raw(*hi.grid(), values)
}

pub fn difference_quotients(c: &SetCurve, k: usize) -> Result<Quotients> {
    c.check_interior(k)?;
    let (t, s) = (&c.times, &c.samples);
    Ok(Quotients {
        forward: quotient(&s[k + 1], &s[k], t[k + 1] - t[k]),
        backward: quotient(&s[k], &s[k - 1], t[k] - t[k - 1]),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HukuharaClass {
    FirstType,
    SecondType,
    Both,
    Neither,
}

impl HukuharaClass {
    /// Exchanges first and second type.
    pub fn mirrored(self) -> Self {
        match self {
            HukuharaClass::FirstType => HukuharaClass::SecondType,
            HukuharaClass::SecondType => HukuharaClass::FirstType,
            other => other,
        }
    }

    pub fn is_first_type(self) -> bool {
        matches!(self, HukuharaClass::FirstType | HukuharaClass::Both)
    }

    pub fn is_second_type(self) -> bool {
        matches!(self, HukuharaClass::SecondType | HukuharaClass::Both)
    }
}

impl fmt::Display for HukuharaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            HukuharaClass::FirstType => "FirstType",
            HukuharaClass::SecondType => "SecondType",
            HukuharaClass::Both => "Both",
            HukuharaClass::Neither => "Neither",
        };
        f.write_str(s)
    }
}

fn classify(q: &Quotients, tol: Option<f64>) -> HukuharaClass {
    let in_cone = |d: &SupportDelta| {
        let tol = tol.unwrap_or_else(|| tol_cone(d.values()));
        d.cone_check(tol).is_inside()
    };
    let first = in_cone(&q.forward) && in_cone(&q.backward);
    let second = in_cone(&-&q.forward) && in_cone(&-&q.backward);
    match (first, second) {
        (true, true) => HukuharaClass::Both,
        (true, false) => HukuharaClass::FirstType,
        (false, true) => HukuharaClass::SecondType,
        (false, false) => HukuharaClass::Neither,
    }
}

/// First type when both quotients lie in the cone, second type when both
/// negated quotients do. `tol = None` uses the default cone tolerance of each
/// quotient.
pub fn classify_step(c: &SetCurve, k: usize, tol: Option<f64>) -> Result<HukuharaClass> {
    Ok(classify(&difference_quotients(c, k)?, tol))
}

/// Per-step classification of a whole curve. Endpoints have only one-sided
/// quotients and are left unclassified (`None`).
#[derive(Debug, Clone, PartialEq)]
pub struct CurveClassification {
    pub steps: Vec<Option<HukuharaClass>>,
}

impl CurveClassification {
    /// Conjunction over the interior steps.
    pub fn aggregate(&self) -> HukuharaClass {
        let inner: Vec<HukuharaClass> = self.steps.iter().flatten().copied().collect();
        let first = inner.iter().all(|c| c.is_first_type());
        let second = inner.iter().all(|c| c.is_second_type());
        match (first, second) {
            (true, true) => HukuharaClass::Both,
            (true, false) => HukuharaClass::FirstType,
            (false, true) => HukuharaClass::SecondType,
            (false, false) => HukuharaClass::Neither,
        }
    }
}

pub fn classify_curve(c: &SetCurve, tol: Option<f64>) -> CurveClassification {
    let steps = (0..c.len())
        .map(|k| classify_step(c, k, tol).ok())
        .collect();
    CurveClassification { steps }
}

/// `B(t) = A(-t)`: times negated and reversed, samples reversed.
pub fn time_reverse(c: &SetCurve) -> SetCurve {
    SetCurve {
        times: c.times.iter().rev().map(|t| -t).collect(),
        samples: c.samples.iter().rev().cloned().collect(),
    }
}

/// Hukuhara differential `D_H A(t_k)` as a support sample: the mean of the two
/// quotients when both lie in the cone and agree within `agree_factor * h`
/// (sup norm, `h` the larger adjacent step).
pub fn hukuhara_differential(
    c: &SetCurve,
    k: usize,
    agree_factor: f64,
) -> Result<Option<SupportSample>> {
    let q = difference_quotients(c, k)?;
    Ok(one_sided_limit(c, k, &q.forward, &q.backward, agree_factor))
}

/// Second type differential `D_H^* A(t_k)` as a support sample.
///
/// The quotients `(-h)^{-1}(A(t) ⊖_H A(t+h))` involve a negative multiple of a
/// set, whose support is `p -> -delta(-p)` for the Fréchet quotient `delta`.
pub fn second_type_differential(
    c: &SetCurve,
    k: usize,
    agree_factor: f64,
) -> Result<Option<SupportSample>> {
    let q = difference_quotients(c, k)?;
    let fwd = reflect_negate(&q.forward)?;
    let bwd = reflect_negate(&q.backward)?;
    Ok(one_sided_limit(c, k, &fwd, &bwd, agree_factor))
}

/// `p -> -delta(-p)` on an even grid.
pub fn reflect_negate(d: &SupportDelta) -> Result<SupportDelta> {
    let g = *d.grid();
    let values = (0..g.len())
        .map(|i| {
            g.antipode(i)
                .map(|j| -d.values()[j])
                .ok_or_else(|| Error::InvalidParameter("antipodes need an even grid".into()))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(SupportDelta::from_raw(g, values))
}

fn one_sided_limit(
    c: &SetCurve,
    k: usize,
    fwd: &SupportDelta,
    bwd: &SupportDelta,
    agree_factor: f64,
) -> Option<SupportSample> {
    let h = (c.times[k + 1] - c.times[k]).max(c.times[k] - c.times[k - 1]);
    let gap = (fwd - bwd).norm_inf();
    if gap > agree_factor * h {
        return None;
    }
    let mean = &(fwd + bwd) * 0.5;
    let tol = tol_cone(mean.values());
    if !(fwd.cone_check(tol_cone(fwd.values())).is_inside()
        && bwd.cone_check(tol_cone(bwd.values())).is_inside())
    {
        return None;
    }
    mean.to_sample(tol)
}
