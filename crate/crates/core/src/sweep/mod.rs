//! Parameter sweeps over amplitude grids and the tabulations built on them.
//!
//! Grid points are evaluated in parallel and collected in canonical order
//! (`d` ascending, then amplitude ascending), so output is byte-identical
//! whatever the worker count.

mod amplitude;
mod output;
mod quantity;
mod table1;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::QcsError;
use crate::fock::FockVector;
use crate::measures::{measure_report, MeasureReport};
use crate::states::{build_state, QcsSpec, StateKind};
use crate::witnesses::{klyshko_table, witness_report, WitnessReport};

pub use amplitude::AmplitudeExpr;
pub use output::{write_klyshko_csv, write_klyshko_json, write_sweep_csv, write_sweep_json};
pub use quantity::{Cell, Quantity};
pub use table1::{table1_search, Table1Cell, Table1Report, TABLE1_CELLS};

/// Sentinel written in place of `A3` when its moment matrices are degenerate.
pub const SINGULAR_SENTINEL: &str = "singular";

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl SweepError {
    /// 2 for bad input, 3 for non-finite results, 1 for I/O trouble.
    pub fn exit_code(&self) -> i32 {
        match self {
            SweepError::Usage(_) => 2,
            SweepError::Numerical(_) => 3,
            SweepError::Io(_) | SweepError::Csv(_) | SweepError::Json(_) => 1,
        }
    }
}

fn usage(msg: impl Into<String>) -> SweepError {
    SweepError::Usage(msg.into())
}

/// Errors from the physics layer. Domain errors here mean the request was
/// malformed; anything else is a numerical failure.
fn from_physics(e: QcsError) -> SweepError {
    match e {
        QcsError::Domain { .. } => SweepError::Usage(e.to_string()),
        other => SweepError::Numerical(other.to_string()),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv|json)")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

/// A validated sweep request. Range endpoints may be period multiples and
/// are resolved separately for every `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub state_kind: StateKind,
    pub d_list: Vec<usize>,
    pub amp_start: AmplitudeExpr,
    pub amp_stop: AmplitudeExpr,
    pub steps: usize,
    pub quantities: Vec<Quantity>,
    /// `None` writes to stdout.
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), SweepError> {
        if self.steps < 2 {
            return Err(usage(format!("steps must be >= 2, got {}", self.steps)));
        }
        if self.d_list.is_empty() {
            return Err(usage("no dimensions given"));
        }
        if let Some(&d) = self.d_list.iter().find(|&&d| d < 2) {
            return Err(usage(format!("dimension {d} < 2")));
        }
        if self.quantities.is_empty() {
            return Err(usage("no quantities given"));
        }
        for &d in &self.d_list {
            let (a, b) = self.range_for(d)?;
            if a > b {
                return Err(usage(format!("range start {a} exceeds stop {b} at d={d}")));
            }
        }
        Ok(())
    }

    fn range_for(&self, d: usize) -> Result<(f64, f64), SweepError> {
        let a = self.amp_start.resolve(d).map_err(from_physics)?;
        let b = self.amp_stop.resolve(d).map_err(from_physics)?;
        Ok((a, b))
    }

    /// The `steps` evenly spaced amplitudes for dimension `d`, endpoints included.
    pub fn amplitudes(&self, d: usize) -> Result<Vec<f64>, SweepError> {
        let (a, b) = self.range_for(d)?;
        let last = (self.steps - 1) as f64;
        Ok((0..self.steps)
            .map(|i| {
                if i == self.steps - 1 {
                    b
                } else {
                    a + (b - a) * i as f64 / last
                }
            })
            .collect())
    }
}

/// Sweep request as read from a `--config` file or assembled from flags.
/// Every field is optional so flags can override a file field by field.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub state_kind: Option<StateKind>,
    pub d_list: Option<Vec<usize>>,
    pub amp_start: Option<AmplitudeExpr>,
    pub amp_stop: Option<AmplitudeExpr>,
    pub steps: Option<usize>,
    pub quantities: Option<Vec<Quantity>>,
    pub output_path: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

impl SweepConfig {
    pub const DEFAULT_STEPS: usize = 100;

    pub fn from_json(text: &str) -> Result<Self, SweepError> {
        serde_json::from_str(text).map_err(|e| usage(format!("bad config: {e}")))
    }

    /// Fields set in `over` win.
    pub fn overridden_by(self, over: SweepConfig) -> SweepConfig {
        SweepConfig {
            state_kind: over.state_kind.or(self.state_kind),
            d_list: over.d_list.or(self.d_list),
            amp_start: over.amp_start.or(self.amp_start),
            amp_stop: over.amp_stop.or(self.amp_stop),
            steps: over.steps.or(self.steps),
            quantities: over.quantities.or(self.quantities),
            output_path: over.output_path.or(self.output_path),
            format: over.format.or(self.format),
        }
    }

    pub fn into_spec(self) -> Result<SweepSpec, SweepError> {
        let spec = SweepSpec {
            state_kind: self
                .state_kind
                .ok_or_else(|| usage("missing state kind (--kind)"))?,
            d_list: self
                .d_list
                .ok_or_else(|| usage("missing dimensions (--d)"))?,
            amp_start: self
                .amp_start
                .ok_or_else(|| usage("missing range start (--range)"))?,
            amp_stop: self
                .amp_stop
                .ok_or_else(|| usage("missing range stop (--range)"))?,
            steps: self.steps.unwrap_or(Self::DEFAULT_STEPS),
            quantities: self
                .quantities
                .ok_or_else(|| usage("missing quantities (--quantities)"))?,
            output_path: self.output_path,
            format: self.format.unwrap_or_default(),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Parses `start:stop`, each side a real or period multiple.
pub fn parse_range(s: &str) -> Result<(AmplitudeExpr, AmplitudeExpr), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("range `{s}` is not of the form start:stop"))?;
    Ok((a.parse()?, b.parse()?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub kind: StateKind,
    pub d: usize,
    pub amplitude: f64,
    /// One cell per entry of [`SweepTable::quantities`].
    pub values: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub quantities: Vec<Quantity>,
    pub rows: Vec<SweepRow>,
}

fn real_state(kind: StateKind, d: usize, amplitude: f64) -> Result<FockVector, SweepError> {
    let spec = QcsSpec::new(kind, d, Complex64::new(amplitude, 0.0)).map_err(from_physics)?;
    build_state(&spec).map_err(from_physics)
}

fn evaluate_point(
    kind: StateKind,
    d: usize,
    amplitude: f64,
    quantities: &[Quantity],
) -> Result<SweepRow, SweepError> {
    let state = real_state(kind, d, amplitude)?;
    let mut values = Vec::with_capacity(quantities.len());
    for q in quantities {
        let cell = q.evaluate(&state).map_err(from_physics)?;
        if let Cell::Value(v) = cell {
            if !v.is_finite() {
                return Err(SweepError::Numerical(format!(
                    "{q} is {v} at kind={kind} d={d} amplitude={amplitude}"
                )));
            }
        }
        values.push(cell);
    }
    Ok(SweepRow {
        kind,
        d,
        amplitude,
        values,
    })
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable, SweepError> {
    spec.validate()?;
    let mut dims = spec.d_list.clone();
    dims.sort_unstable();
    dims.dedup();
    let mut points = Vec::with_capacity(dims.len() * spec.steps);
    for d in dims {
        for a in spec.amplitudes(d)? {
            points.push((d, a));
        }
    }
    // rayon's indexed collect keeps input order
    let rows = points
        .par_iter()
        .map(|&(d, a)| evaluate_point(spec.state_kind, d, a, &spec.quantities))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SweepTable {
        quantities: spec.quantities.clone(),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KlyshkoBar {
    pub kind: StateKind,
    pub d: usize,
    /// The amplitude as given, e.g. `Td/4`.
    pub label: String,
    pub amplitude: f64,
    pub n: usize,
    pub value: f64,
}

/// `B(n)` for `n = 0..=d-3` at each amplitude, in long format. Values are
/// unscaled.
pub fn klyshko_bars(
    kind: StateKind,
    d: usize,
    amplitudes: &[AmplitudeExpr],
) -> Result<Vec<KlyshkoBar>, SweepError> {
    let mut bars = Vec::new();
    for expr in amplitudes {
        let amplitude = expr.resolve(d).map_err(from_physics)?;
        let state = real_state(kind, d, amplitude)?;
        for (n, value) in klyshko_table(&state).into_iter().enumerate() {
            bars.push(KlyshkoBar {
                kind,
                d,
                label: expr.to_string(),
                amplitude,
                n,
                value,
            });
        }
    }
    Ok(bars)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateReport {
    pub kind: StateKind,
    pub d: usize,
    pub amplitude_re: f64,
    pub amplitude_im: f64,
    pub witnesses: WitnessReport,
    pub measures: MeasureReport,
}

/// Full witness and measure report for the state with amplitude
/// `modulus * exp(i phase)`.
pub fn state_report(
    kind: StateKind,
    d: usize,
    modulus: &AmplitudeExpr,
    phase: f64,
) -> Result<StateReport, SweepError> {
    let r = modulus.resolve(d).map_err(from_physics)?;
    let amplitude = Complex64::from_polar(r, phase);
    let spec = QcsSpec::new(kind, d, amplitude).map_err(from_physics)?;
    let state = build_state(&spec).map_err(from_physics)?;
    Ok(StateReport {
        kind,
        d,
        amplitude_re: amplitude.re,
        amplitude_im: amplitude.im,
        witnesses: witness_report(&state),
        measures: measure_report(&state).map_err(from_physics)?,
    })
}
