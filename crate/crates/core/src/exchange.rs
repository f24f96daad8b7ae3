//! JSON set/sample records and CSV writers.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{DirectionGrid, Vec2};
use crate::hukuhara::SetCurve;
use crate::polygon::ConvexPolygon;
use crate::support::SupportSample;

/// `{"vertices": [[x, y], ...]}` or `{"box": [[x0, x1], [y0, y1]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetRecord {
    Vertices { vertices: Vec<[f64; 2]> },
    Box {
        #[serde(rename = "box")]
        bounds: [[f64; 2]; 2],
    },
}

impl SetRecord {
    /// Vertices must already be convex and counterclockwise.
    pub fn to_polygon(&self) -> Result<ConvexPolygon> {
        match self {
            SetRecord::Vertices { vertices } => {
                ConvexPolygon::new(vertices.iter().map(|v| Vec2::new(v[0], v[1])).collect())
            }
            SetRecord::Box { bounds: [[x0, x1], [y0, y1]] } => {
                ConvexPolygon::rectangle(*x0, *x1, *y0, *y1)
            }
        }
    }

    pub fn from_polygon(p: &ConvexPolygon) -> Self {
        SetRecord::Vertices { vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect() }
    }
}

/// `{"n": 64, "values": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub n: usize,
    pub values: Vec<f64>,
}

impl SampleRecord {
    pub fn to_sample(&self) -> Result<SupportSample> {
        SupportSample::new(DirectionGrid::new(self.n)?, self.values.clone())
    }

    pub fn from_sample(s: &SupportSample) -> Self {
        Self { n: s.grid().len(), values: s.values().to_vec() }
    }
}

pub fn parse_set(json: &str) -> Result<ConvexPolygon> {
    let record: SetRecord =
        serde_json::from_str(json).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    record.to_polygon()
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_value(x: f64) -> String {
    format!("{x:.16e}")
}

fn value_header(out: &mut String, n: usize) {
    for i in 0..n {
        let _ = write!(out, ",v{i}");
    }
    out.push('\n');
}

fn push_values(out: &mut String, values: &[f64]) {
    for v in values {
        out.push(',');
        out.push_str(&fmt_value(*v));
    }
    out.push('\n');
}

/// Rows `t,v0,...,v{n-1}`.
pub fn rows_csv<'a>(n: usize, rows: impl IntoIterator<Item = (f64, &'a [f64])>) -> String {
    let mut out = String::from("t");
    value_header(&mut out, n);
    for (t, values) in rows {
        out.push_str(&fmt_value(t));
        push_values(&mut out, values);
    }
    out
}

pub fn curve_csv(c: &SetCurve) -> String {
    rows_csv(c.grid().len(), c.times().iter().zip(c.samples()).map(|(t, s)| (*t, s.values())))
}

/// Inverse of [`curve_csv`]; samples are validated as cone points.
pub fn parse_curve_csv(text: &str) -> Result<SetCurve> {
    let bad = |msg: String| Error::InvalidCurve(msg);
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| bad("empty file".into()))?;
    let n = header.split(',').count().saturating_sub(1);
    let grid = DirectionGrid::new(n)?;
    let mut times = Vec::new();
    let mut samples = Vec::new();
    for (row, line) in lines.enumerate() {
        let fields = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<f64>, _>>()
            .map_err(|e| bad(format!("row {row}: {e}")))?;
        if fields.len() != n + 1 {
            return Err(bad(format!("row {row}: expected {} fields", n + 1)));
        }
        times.push(fields[0]);
        samples.push(SupportSample::new(grid, fields[1..].to_vec())?);
    }
    SetCurve::new(times, samples)
}

/// Rows `t,residual,regularized,v0,...`.
pub fn trajectory_csv(
    n: usize,
    rows: impl IntoIterator<Item = (f64, f64, bool, Vec<f64>)>,
) -> String {
    let mut out = String::from("t,residual,regularized");
    value_header(&mut out, n);
    for (t, residual, flag, values) in rows {
        let _ = write!(out, "{},{},{}", fmt_value(t), fmt_value(residual), u8::from(flag));
        push_values(&mut out, &values);
    }
    out
}
