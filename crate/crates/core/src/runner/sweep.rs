// Copyright 2026 The pairconc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Parameter sweeps over one or two scalar axes.

use std::f64::consts::FRAC_PI_4;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::random::task_rng;

use super::config::{ExperimentConfig, InputState, Mode, StateFamily};
use super::record::Scalars;
use super::{run, RunOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepParameter {
    /// Schmidt angle of a `pure-schmidt` input (replaces the input state).
    Alpha,
    /// Target Schmidt angle.
    Beta,
    /// Singlet weight of a Werner input (replaces the input state).
    WernerP,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::Alpha => "alpha",
            SweepParameter::Beta => "beta",
            SweepParameter::WernerP => "werner_p",
        }
    }

    fn range(self) -> (f64, f64) {
        match self {
            SweepParameter::Alpha | SweepParameter::Beta => (0.0, FRAC_PI_4),
            SweepParameter::WernerP => (0.0, 1.0),
        }
    }
}

/// `points` evenly spaced values from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl SweepAxis {
    pub fn values(&self) -> Vec<f64> {
        match self.points {
            0 => Vec::new(),
            1 => vec![self.start],
            n => (0..n)
                .map(|k| {
                    if k == n - 1 {
                        self.stop
                    } else {
                        self.start + (self.stop - self.start) * k as f64 / (n - 1) as f64
                    }
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub axes: Vec<SweepAxis>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::ConfigInvalid(format!("a sweep needs one or two axes, got {}", self.axes.len())));
        }
        if self.axes.len() == 2 && self.axes[0].parameter == self.axes[1].parameter {
            return Err(Error::ConfigInvalid("sweep axes must differ".into()));
        }
        let state_axes = self
            .axes
            .iter()
            .filter(|a| matches!(a.parameter, SweepParameter::Alpha | SweepParameter::WernerP))
            .count();
        if state_axes > 1 {
            return Err(Error::ConfigInvalid("alpha and werner_p both replace the input state".into()));
        }
        for a in &self.axes {
            let (lo, hi) = a.parameter.range();
            let ok = a.start.is_finite() && a.stop.is_finite() && lo <= a.start && a.start <= a.stop && a.stop <= hi;
            if !ok {
                return Err(Error::ConfigInvalid(format!(
                    "{} axis [{}, {}] must be ascending within [{lo}, {hi}]",
                    a.parameter.name(),
                    a.start,
                    a.stop
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Ok,
    /// Outside the protocol's domain (for example `α > β`); not an error.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub index: usize,
    pub coordinates: Vec<f64>,
    pub status: RowStatus,
    #[serde(flatten)]
    pub scalars: Scalars,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub schema_version: u32,
    pub mode: Mode,
    pub parameters: Vec<SweepParameter>,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut header = vec!["index".to_string()];
        header.extend(self.parameters.iter().map(|p| p.name().to_string()));
        header.push("status".into());
        header.extend(Scalars::HEADER.iter().map(|s| s.to_string()));
        let mut out = header.join(",");
        out.push('\n');
        for row in &self.rows {
            let mut cells = vec![row.index.to_string()];
            cells.extend(row.coordinates.iter().map(|&x| super::record::format_number(x)));
            cells.push(match row.status {
                RowStatus::Ok => "ok".into(),
                RowStatus::Skipped => "skipped".into(),
            });
            cells.extend(row.scalars.cells());
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn apply(config: &mut ExperimentConfig, parameter: SweepParameter, value: f64) {
    match parameter {
        SweepParameter::Alpha => config.input_state = InputState::family(StateFamily::PureSchmidt { alpha: value }),
        SweepParameter::WernerP => config.input_state = InputState::family(StateFamily::Werner { p: value }),
        SweepParameter::Beta => config.protocol.beta = Some(value),
    }
}

/// Runs every grid point, first axis slowest. Each point gets its own seed
/// derived from the master seed and its index, so results do not depend on
/// how points are scheduled.
pub fn run_sweep(config: &ExperimentConfig, mode: Mode, exec: Execution) -> Result<SweepTable> {
    let spec = config.sweep.as_ref().ok_or_else(|| Error::ConfigInvalid("sweep needs a sweep section".into()))?;
    spec.validate()?;
    config.validate(mode)?;
    let grids: Vec<Vec<f64>> = spec.axes.iter().map(SweepAxis::values).collect();
    let total: usize = grids.iter().map(Vec::len).product();
    let coords = |index: usize| -> Vec<f64> {
        let mut rem = index;
        let mut c = vec![0.0; grids.len()];
        for (k, g) in grids.iter().enumerate().rev() {
            c[k] = g[rem % g.len()];
            rem /= g.len();
        }
        c
    };
    let rows = exec.map_range(total, |index| -> Result<SweepRow> {
        let coordinates = coords(index);
        let mut point = config.clone();
        point.sweep = None;
        point.output = None;
        for (axis, &v) in spec.axes.iter().zip(&coordinates) {
            apply(&mut point, axis.parameter, v);
        }
        if let Some(seed) = config.seed {
            point.seed = Some(task_rng(seed, index as u64).random());
        }
        if mode == Mode::Pure {
            if let Some(StateFamily::PureSchmidt { alpha }) = point.input_state.family {
                if alpha > point.protocol.beta() {
                    return Ok(SweepRow { index, coordinates, status: RowStatus::Skipped, scalars: Scalars::default() });
                }
            }
        }
        let record = run(&point, mode, RunOptions { exec: Execution::Sequential, timing: false })?;
        Ok(SweepRow { index, coordinates, status: RowStatus::Ok, scalars: record.scalars() })
    });
    Ok(SweepTable {
        schema_version: super::SCHEMA_VERSION,
        mode,
        parameters: spec.axes.iter().map(|a| a.parameter).collect(),
        rows: rows.into_iter().collect::<Result<_>>()?,
    })
}
