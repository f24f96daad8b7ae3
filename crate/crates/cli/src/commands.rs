use std::fmt::Write;
use std::path::{Path, PathBuf};

use setflow::dynamics::example::{closed_form_example, initial_rectangles, relax_field, square_target, ExampleStart};
use setflow::dynamics::{
    existence_horizon, integrate, lipschitz_estimate, osl_check, subtangent_feasible, IntegrateOptions,
    IntegrationError, OslCase, Subtangent, SweepConfig, Trajectory,
};
use setflow::dynamics::diagnostics::horizon_sample;
use setflow::exchange::{fmt_value, rows_csv, SampleRecord, SetRecord};
use setflow::hukuhara::{classify_curve, CurveClassification};
use setflow::reconstruct::reconstruct_polygon;
use setflow::sampling::{random_convex_polygon, random_rectangle, stream};
use setflow::tolerance::tol_cone;
use setflow::{
    hausdorff_exact, hausdorff_grid, hukuhara_differential, second_type_differential, support_of_polygon,
    ConvexPolygon, DirectionGrid, Error, Execution, SupportSample, Vec2,
};

use crate::config::ScenarioConfig;
use crate::error::{write_file, CliError};
use crate::svg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckKind {
    Subtangent,
    Osl,
    Lipschitz,
    Horizon,
}

impl CheckKind {
    fn label(self) -> &'static str {
        match self {
            CheckKind::Subtangent => "subtangent",
            CheckKind::Osl => "osl",
            CheckKind::Lipschitz => "lipschitz",
            CheckKind::Horizon => "horizon",
        }
    }
}

/// Lines for standard output. A violation still writes its report first.
pub type Outcome = Result<String, CliError>;

fn frames<'a>(times: &[f64], samples: &'a [SupportSample], dt: f64) -> Vec<(f64, &'a SupportSample)> {
    svg::frame_indices(times, dt).into_iter().map(|k| (times[k], &samples[k])).collect()
}

fn distance_csv(traj: &Trajectory, target: &SupportSample) -> Result<String, CliError> {
    let mut out = String::from("t,distance\n");
    for (t, s) in traj.times.iter().zip(&traj.samples) {
        let d = hausdorff_grid(s, target).map_err(|e| CliError::Config(e.to_string()))?;
        let _ = writeln!(out, "{},{}", fmt_value(*t), fmt_value(d));
    }
    Ok(out)
}

pub fn run_integrate(path: &Path) -> Outcome {
    let cfg = ScenarioConfig::load(path)?;
    let sigma0 = support_of_polygon(&cfg.initial, &cfg.grid);
    let traj_path = cfg.out_path(&cfg.output.trajectory, "_trajectory.csv");
    let traj = match integrate(cfg.field.as_ref(), &sigma0, &cfg.options) {
        Ok(t) => t,
        Err(IntegrationError::Setup(e)) => return Err(CliError::Config(e.to_string())),
        Err(IntegrationError::Stopped { error, time, partial }) => {
            write_file(&traj_path, &partial.to_csv())?;
            return Err(CliError::Integration(format!(
                "stopped at t = {time} after {} states: {error}; partial trajectory in {}",
                partial.len(),
                traj_path.display()
            )));
        }
    };
    write_file(&traj_path, &traj.to_csv())?;
    let mut written = vec![traj_path];
    if let Some(target) = &cfg.target {
        let p = cfg.out_path(&cfg.output.distance, "_distance.csv");
        write_file(&p, &distance_csv(&traj, target)?)?;
        written.push(p);
    }
    let shown = frames(&traj.times, &traj.samples, cfg.frame_dt);
    if cfg.output.filmstrip.is_some() {
        let p = cfg.out_path(&cfg.output.filmstrip, "");
        write_file(&p, &svg::filmstrip(&shown, &[]))?;
        written.push(p);
    }
    if cfg.output.support_svg.is_some() {
        let p = cfg.out_path(&cfg.output.support_svg, "");
        write_file(&p, &svg::support_plot(&shown))?;
        written.push(p);
    }

    let repaired = traj.regularized.iter().filter(|r| **r).count();
    let worst = traj.residuals.iter().fold(0.0_f64, |m, r| m.max(*r));
    let mut out = format!(
        "{} {} steps to t = {}, max residual {worst:.3e}, {repaired} regularized\n",
        cfg.field.name(),
        traj.len() - 1,
        traj.times.last().copied().unwrap_or(0.0)
    );
    for p in written {
        let _ = writeln!(out, "wrote {}", p.display());
    }
    Ok(out)
}

const EXAMPLE_N: usize = 64;
const EXAMPLE_T: f64 = 4.0;
const EXAMPLE_H: f64 = 0.01;
const FRAME_DT: f64 = 0.25;
/// Quotients count as agreeing when they differ by at most this times `h`.
const AGREE_FACTOR: f64 = 10.0;

struct ExampleRun {
    start: ExampleStart,
    traj: Trajectory,
    classes: CurveClassification,
    closed_form_error: f64,
}

fn run_example_curve(start: ExampleStart, grid: &DirectionGrid) -> Result<ExampleRun, Error> {
    let f = relax_field(grid);
    let sigma0 = support_of_polygon(&start.set, grid);
    let traj = integrate(&f, &sigma0, &IntegrateOptions::new(EXAMPLE_T, EXAMPLE_H)).map_err(|e| e.error().clone())?;
    let q = square_target();
    let mut closed_form_error = 0.0_f64;
    for (t, s) in traj.times.iter().zip(&traj.samples) {
        let exact = closed_form_example(&start.set, &q, *t, grid)?;
        closed_form_error = closed_form_error.max(hausdorff_grid(s, &exact)?);
    }
    let classes = classify_curve(&traj.to_curve()?, None);
    Ok(ExampleRun { start, traj, classes, closed_form_error })
}

fn class_report(run: &ExampleRun) -> String {
    let mut out = String::from("t,class\n");
    for (t, c) in run.traj.times.iter().zip(&run.classes.steps) {
        let label = c.map_or("Unclassified".to_string(), |c| c.to_string());
        let _ = writeln!(out, "{},{label}", fmt_value(*t));
    }
    out
}

type Differential = fn(&setflow::SetCurve, usize, f64) -> setflow::Result<Option<SupportSample>>;

fn differential_csv(curve: &setflow::SetCurve, d: Differential) -> Result<String, Error> {
    let mut rows = Vec::new();
    for k in 1..curve.len().saturating_sub(1) {
        if let Some(s) = d(curve, k, AGREE_FACTOR)? {
            rows.push((curve.times()[k], s.into_values()));
        }
    }
    Ok(rows_csv(curve.grid().len(), rows.iter().map(|(t, v)| (*t, v.as_slice()))))
}

/// Forward Fréchet quotient `(sigma(t+h) - sigma(t)) / h` at every step but
/// the last.
fn delta_csv(curve: &setflow::SetCurve) -> String {
    let (t, s) = (curve.times(), curve.samples());
    let rows: Vec<(f64, Vec<f64>)> = (0..curve.len().saturating_sub(1))
        .map(|k| {
            let dt = t[k + 1] - t[k];
            (t[k], s[k + 1].values().iter().zip(s[k].values()).map(|(a, b)| (a - b) / dt).collect())
        })
        .collect();
    rows_csv(curve.grid().len(), rows.iter().map(|(t, v)| (*t, v.as_slice())))
}

pub fn run_example(outdir: &Path) -> Outcome {
    std::fs::create_dir_all(outdir).map_err(|e| CliError::Filesystem(format!("{}: {e}", outdir.display())))?;
    let grid = DirectionGrid::new(EXAMPLE_N).expect("valid grid size");
    let starts: Vec<ExampleStart> = initial_rectangles().into();
    let runs = Execution::default().map(&starts, |s| run_example_curve(s.clone(), &grid));
    let runs = runs
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Integration(e.to_string()))?;

    let target = square_target();
    let target_outline: Vec<Vec2> = target.vertices().to_vec();
    let internal = |e: Error| CliError::Integration(e.to_string());
    let mut summary = String::new();
    let mut worst = 0.0_f64;
    for run in &runs {
        let name = run.start.name;
        let file = |suffix: &str| -> PathBuf { outdir.join(format!("{name}_{suffix}")) };
        let curve = run.traj.to_curve().map_err(internal)?;
        let class = run.classes.aggregate();
        write_file(&file("trajectory.csv"), &run.traj.to_csv())?;
        write_file(&file("classes.csv"), &class_report(run))?;
        write_file(&file("delta.csv"), &delta_csv(&curve))?;
        if class.is_first_type() {
            write_file(&file("hukuhara.csv"), &differential_csv(&curve, hukuhara_differential).map_err(internal)?)?;
        }
        if class.is_second_type() {
            write_file(
                &file("second_type.csv"),
                &differential_csv(&curve, second_type_differential).map_err(internal)?,
            )?;
        }
        let shown = frames(&run.traj.times, &run.traj.samples, FRAME_DT);
        write_file(&file("filmstrip.svg"), &svg::filmstrip(&shown, std::slice::from_ref(&target_outline)))?;
        write_file(&file("support.svg"), &svg::support_plot(&shown))?;
        worst = worst.max(run.closed_form_error);
        let _ = writeln!(summary, "{name} {class}");
    }
    let _ = writeln!(summary, "max closed-form error {worst:.3e}");
    write_file(&outdir.join("summary.txt"), &summary)?;
    Ok(summary)
}

fn sweep(cfg: &ScenarioConfig) -> Result<SweepConfig, CliError> {
    Ok(SweepConfig { samples: cfg.check.samples, seed: cfg.seed()?, execution: Execution::default() })
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;

struct CheckResult {
    report: String,
    witnesses: String,
    violated: bool,
}

fn check_subtangent(cfg: &ScenarioConfig, sw: &SweepConfig) -> Result<CheckResult, Error> {
    let sigma0 = support_of_polygon(&cfg.initial, &cfg.grid);
    let f = cfg.field.as_ref();
    let t_end = cfg.options.t_end;
    let results = sw.execution.map_range(sw.samples, |k| -> Result<(f64, Subtangent), Error> {
        let (t, s) = horizon_sample(&sigma0, cfg.check.radius, t_end, sw.seed, k);
        let v = f.eval(t, &s)?;
        let tol = tol_cone(v.values()).max(tol_cone(s.values()));
        Ok((t, subtangent_feasible(&v, &s, tol)?))
    });
    let mut witnesses = String::from("sample,t,feasible,lambda_lo,lambda_hi,index\n");
    let mut lo = 0.0_f64;
    let mut hi: Option<f64> = None;
    let mut unit = 0usize;
    let mut infeasible = 0usize;
    for (k, r) in results.into_iter().enumerate() {
        let (t, st) = r?;
        match st {
            Subtangent::Feasible(iv) => {
                lo = lo.max(iv.lo);
                if let Some(h) = iv.hi {
                    hi = Some(hi.map_or(h, |x| x.min(h)));
                }
                unit += usize::from(iv.contains(1.0));
                let h = iv.hi.map_or("inf".into(), fmt_value);
                let _ = writeln!(witnesses, "{k},{},1,{},{h},", fmt_value(t), fmt_value(iv.lo));
            }
            Subtangent::Infeasible { index } => {
                infeasible += 1;
                let _ = writeln!(witnesses, "{k},{},0,,,{index}", fmt_value(t));
            }
        }
    }
    let mut report = format!("subtangent: {} samples, {infeasible} infeasible\n", sw.samples);
    if infeasible == 0 {
        let hi = hi.map_or("inf".into(), |h| h.to_string());
        let _ = writeln!(report, "intersection of lambda intervals: [{lo}, {hi}]");
        let _ = writeln!(report, "lambda = 1 feasible at {unit}/{} samples", sw.samples);
    }
    Ok(CheckResult { report, witnesses, violated: infeasible > 0 })
}

fn osl_pair(extent: f64, seed: u64, k: usize) -> (ConvexPolygon, ConvexPolygon) {
    let mut rng = stream(seed, k as u64);
    if k.is_multiple_of(2) {
        let a = random_rectangle(&mut rng, extent, extent);
        let b = random_rectangle(&mut rng, extent, extent);
        (a, b)
    } else {
        let r1 = extent * 0.5;
        let c1 = Vec2::new(extent * 0.5, 0.0);
        let a = random_convex_polygon(&mut rng, c1, r1, 6);
        let b = random_convex_polygon(&mut rng, -c1, r1, 6);
        (a, b)
    }
}

fn check_osl(cfg: &ScenarioConfig, sw: &SweepConfig) -> Result<CheckResult, Error> {
    let omega = cfg.omega();
    let f = cfg.field.as_ref();
    let t_end = cfg.options.t_end;
    let results = sw.execution.map_range(sw.samples, |k| {
        let (a, b) = osl_pair(cfg.check.extent, sw.seed, k);
        let t = t_end * (k as f64 * GOLDEN).fract();
        (t, osl_check(f, &a, &b, t, &omega, &cfg.grid, 1e-12))
    });
    let mut witnesses = String::from("sample,t,case,a_x,a_y,b_x,b_y,index,snap_error,lhs,bound,gap\n");
    let (mut checked, mut skipped, mut violated) = (0usize, 0usize, 0usize);
    let mut max_gap = f64::NEG_INFINITY;
    for (k, (t, r)) in results.into_iter().enumerate() {
        let report = match r {
            Ok(r) => r,
            Err(Error::Degenerate(_)) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        checked += 1;
        let best = report.candidates.iter().map(|c| c.gap()).fold(f64::INFINITY, f64::min);
        max_gap = max_gap.max(best);
        if let Some(w) = report.witness() {
            violated += 1;
            let case = match w.case {
                OslCase::Forward => "forward",
                OslCase::Backward => "backward",
            };
            let _ = writeln!(
                witnesses,
                "{k},{},{case},{},{},{},{},{},{},{},{},{}",
                fmt_value(t),
                fmt_value(w.a.x),
                fmt_value(w.a.y),
                fmt_value(w.b.x),
                fmt_value(w.b.y),
                w.index,
                fmt_value(w.snap_error),
                fmt_value(w.lhs),
                fmt_value(w.bound),
                fmt_value(w.gap())
            );
        }
    }
    let mut report = format!(
        "osl: {checked} pairs checked, {skipped} coincident pairs skipped, {violated} violated\n"
    );
    if checked > 0 {
        let _ = writeln!(report, "largest best-candidate gap (lhs - bound): {max_gap:.6e}");
    }
    Ok(CheckResult { report, witnesses, violated: violated > 0 })
}

fn check_lipschitz(cfg: &ScenarioConfig, sw: &SweepConfig) -> Result<CheckResult, Error> {
    let f = cfg.field.as_ref();
    let estimate = lipschitz_estimate(f, &cfg.grid, cfg.options.t_end, cfg.check.extent, sw)?;
    let declared = f.lipschitz();
    let violated = declared.is_some_and(|l| estimate > l * (1.0 + 1e-9) + 1e-12);
    let mut report = format!("lipschitz: estimate {estimate} over {} pairs\n", sw.samples);
    match declared {
        Some(l) => {
            let _ = writeln!(report, "declared constant {l}: {}", if violated { "exceeded" } else { "consistent" });
        }
        None => report.push_str("no declared constant\n"),
    }
    let witnesses = format!(
        "estimate,declared\n{},{}\n",
        fmt_value(estimate),
        declared.map_or(String::new(), fmt_value)
    );
    Ok(CheckResult { report, witnesses, violated })
}

fn check_horizon(cfg: &ScenarioConfig, sw: &SweepConfig) -> Result<CheckResult, Error> {
    let sigma0 = support_of_polygon(&cfg.initial, &cfg.grid);
    let (r, t_end) = (cfg.check.radius, cfg.options.t_end);
    let (c, b) = match existence_horizon(cfg.field.as_ref(), &sigma0, r, t_end, sw) {
        Ok(h) => (h.c, h.b),
        Err(Error::DegenerateField { horizon }) => (0.0, horizon),
        Err(e) => return Err(e),
    };
    let report = format!(
        "horizon: sampled bound c = {c} on ||f|| over {} samples in the ball of radius {r}\nexistence horizon b = min(T, r/c) = {b}\n",
        sw.samples
    );
    let witnesses = format!("c,b,r,T\n{},{},{},{}\n", fmt_value(c), fmt_value(b), fmt_value(r), fmt_value(t_end));
    Ok(CheckResult { report, witnesses, violated: false })
}

pub fn run_check(kind: CheckKind, path: &Path) -> Outcome {
    let cfg = ScenarioConfig::load(path)?;
    let sw = sweep(&cfg)?;
    let result = match kind {
        CheckKind::Subtangent => check_subtangent(&cfg, &sw),
        CheckKind::Osl => check_osl(&cfg, &sw),
        CheckKind::Lipschitz => check_lipschitz(&cfg, &sw),
        CheckKind::Horizon => check_horizon(&cfg, &sw),
    }
    .map_err(|e| CliError::Config(e.to_string()))?;
    let label = kind.label();
    let report_path = cfg.out_path(&cfg.output.report, &format!("_{label}.txt"));
    let witness_path = cfg.out_path(&cfg.output.witnesses, &format!("_{label}_witnesses.csv"));
    let mut report = format!("field {} seed {}\n{}", cfg.field.name(), sw.seed, result.report);
    write_file(&report_path, &report)?;
    write_file(&witness_path, &result.witnesses)?;
    let _ = writeln!(report, "wrote {}\nwrote {}", report_path.display(), witness_path.display());
    if result.violated {
        return Err(CliError::Violation(report));
    }
    Ok(report)
}

fn load_set(path: &Path) -> Result<ConvexPolygon, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let parse = || -> Result<ConvexPolygon, String> {
        if let Ok(record) = serde_json::from_str::<SetRecord>(&text) {
            return record.to_polygon().map_err(|e| e.to_string());
        }
        let sample: SampleRecord = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let s = sample.to_sample().map_err(|e| e.to_string())?;
        reconstruct_polygon(&s).map_err(|e| e.to_string())
    };
    parse().map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

pub fn run_hausdorff(a: &Path, b: &Path, n: usize) -> Outcome {
    let grid = DirectionGrid::new(n).map_err(|e| CliError::Config(e.to_string()))?;
    let (pa, pb) = (load_set(a)?, load_set(b)?);
    let estimate = hausdorff_grid(&support_of_polygon(&pa, &grid), &support_of_polygon(&pb, &grid))
        .map_err(|e| CliError::Config(e.to_string()))?;
    let exact = hausdorff_exact(&pa, &pb);
    Ok(format!(
        "grid estimate {}\nexact {}\ngap {}\n",
        fmt_value(estimate),
        fmt_value(exact),
        fmt_value(exact - estimate)
    ))
}
