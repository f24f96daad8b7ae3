//! Scenario files.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use setflow::dynamics::{
    Affine, Constant, GrowthClass, GrowthFunction, IntegrateOptions, Method, RegularizationPolicy,
    RelaxTo, RhsField,
};
use setflow::exchange::SetRecord;
use setflow::sampling::DEFAULT_SEED;
use setflow::support::{support_of_polygon, SupportDelta, SupportSample};
use setflow::{ConvexPolygon, DirectionGrid};

use crate::error::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RhsKind {
    RelaxTo { target: SetRecord },
    Constant { delta: Vec<f64> },
    Affine { state_coeff: f64, target_coeff: f64, target: SetRecord },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GrowthKind {
    Linear { l: f64 },
    Zero,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    pub trajectory: Option<PathBuf>,
    pub filmstrip: Option<PathBuf>,
    pub support_svg: Option<PathBuf>,
    pub distance: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub witnesses: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSettings {
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Radius of the ball around the initial state.
    #[serde(default = "default_radius")]
    pub radius: f64,
    /// Sets for the one-sided Lipschitz and Lipschitz sweeps are drawn from
    /// `[-extent, extent]^2`.
    #[serde(default = "default_extent")]
    pub extent: f64,
    #[serde(default = "default_omega")]
    pub omega: GrowthKind,
    pub seed: Option<u64>,
}

fn default_samples() -> usize {
    256
}
fn default_radius() -> f64 {
    1.0
}
fn default_extent() -> f64 {
    3.0
}
fn default_omega() -> GrowthKind {
    GrowthKind::Linear { l: 1.0 }
}
fn default_frame_dt() -> f64 {
    0.25
}

impl Default for CheckSettings {
    fn default() -> Self {
        Self {
            samples: default_samples(),
            radius: default_radius(),
            extent: default_extent(),
            omega: default_omega(),
            seed: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub grid_n: usize,
    #[serde(rename = "T")]
    pub t_end: f64,
    pub h: f64,
    #[serde(default = "default_method")]
    pub method: Method,
    #[serde(default)]
    pub policy: RegularizationPolicy,
    pub rhs: RhsKind,
    pub initial: SetRecord,
    #[serde(default)]
    pub output: OutputPaths,
    #[serde(default)]
    pub check: CheckSettings,
    #[serde(default = "default_frame_dt")]
    pub frame_dt: f64,
}

fn default_method() -> Method {
    Method::Rk4
}

/// Validated scenario with paths resolved against the config directory.
pub struct ScenarioConfig {
    pub grid: DirectionGrid,
    pub options: IntegrateOptions,
    pub field: Box<dyn RhsField>,
    pub target: Option<SupportSample>,
    pub initial: ConvexPolygon,
    pub check: CheckSettings,
    pub frame_dt: f64,
    pub dir: PathBuf,
    pub stem: String,
    pub output: OutputPaths,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
        let raw: RawConfig = serde_json::from_str(&text)
            .map_err(|e| bad(format!("{}: {e}", path.display())))?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let stem = path.file_stem().map_or("scenario".into(), |s| s.to_string_lossy().into_owned());
        Self::from_raw(raw, dir, stem)
    }

    pub fn from_raw(raw: RawConfig, dir: PathBuf, stem: String) -> Result<Self, CliError> {
        if raw.grid_n < 3 || !raw.grid_n.is_multiple_of(2) {
            return Err(bad(format!("grid_n must be even and at least 4, got {}", raw.grid_n)));
        }
        if !(raw.h > 0.0 && raw.h.is_finite()) {
            return Err(bad(format!("h must be positive, got {}", raw.h)));
        }
        if !(raw.t_end > 0.0 && raw.t_end.is_finite()) {
            return Err(bad(format!("T must be positive, got {}", raw.t_end)));
        }
        if !(raw.frame_dt > 0.0) {
            return Err(bad("frame_dt must be positive"));
        }
        if raw.check.samples == 0 || !(raw.check.radius > 0.0) || !(raw.check.extent > 0.0) {
            return Err(bad("check.samples, check.radius and check.extent must be positive"));
        }
        let grid = DirectionGrid::new(raw.grid_n).map_err(|e| bad(e.to_string()))?;
        let initial = raw.initial.to_polygon().map_err(|e| bad(format!("initial: {e}")))?;
        let polygon = |r: &SetRecord| r.to_polygon().map_err(|e| bad(format!("rhs target: {e}")));
        let (field, target): (Box<dyn RhsField>, Option<SupportSample>) = match &raw.rhs {
            RhsKind::RelaxTo { target } => {
                let t = support_of_polygon(&polygon(target)?, &grid);
                (Box::new(RelaxTo { target: t.clone() }), Some(t))
            }
            RhsKind::Constant { delta } => {
                let d = SupportDelta::new(grid, delta.clone()).map_err(|e| bad(format!("rhs delta: {e}")))?;
                (Box::new(Constant { delta: d }), None)
            }
            RhsKind::Affine { state_coeff, target_coeff, target } => {
                let t = support_of_polygon(&polygon(target)?, &grid);
                let f = Affine { state_coeff: *state_coeff, target_coeff: *target_coeff, target: t };
                (Box::new(f), None)
            }
        };
        let options = IntegrateOptions::new(raw.t_end, raw.h).method(raw.method).policy(raw.policy);
        Ok(Self {
            grid,
            options,
            field,
            target,
            initial,
            check: raw.check,
            frame_dt: raw.frame_dt,
            dir,
            stem,
            output: raw.output,
        })
    }

    /// `configured` relative to the config directory, or `<stem><suffix>`
    /// next to the config.
    pub fn out_path(&self, configured: &Option<PathBuf>, suffix: &str) -> PathBuf {
        match configured {
            Some(p) if p.is_absolute() => p.clone(),
            Some(p) => self.dir.join(p),
            None => self.dir.join(format!("{}{suffix}", self.stem)),
        }
    }

    pub fn omega(&self) -> GrowthFunction {
        match self.check.omega {
            GrowthKind::Linear { l } => GrowthFunction::linear(l),
            GrowthKind::Zero => GrowthFunction::new(GrowthClass::U1, |_, _| 0.0),
        }
    }

    /// `SETFLOW_SEED`, then the config, then the library default.
    pub fn seed(&self) -> Result<u64, CliError> {
        match std::env::var("SETFLOW_SEED") {
            Ok(s) => s.trim().parse().map_err(|_| bad(format!("SETFLOW_SEED is not an integer: {s:?}"))),
            Err(_) => Ok(self.check.seed.unwrap_or(DEFAULT_SEED)),
        }
    }
}
