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

//! Experiment configuration documents.

use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};

use crate::concentration::{QuasiGrid, VbsParams};
use crate::error::{Error, Result};
use crate::povm::OpticalNetlist;
use crate::qstate::{c, DensityMatrix4, Mat4, PureState2Q, TwoQubitState, Vec4};

use super::sweep::SweepSpec;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Pure,
    Mixed,
    VbsCompare,
    Tomography,
    Circuit,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Pure => "pure",
            Mode::Mixed => "mixed",
            Mode::VbsCompare => "vbs-compare",
            Mode::Tomography => "tomography",
            Mode::Circuit => "circuit",
        }
    }
}

/// Named state families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum StateFamily {
    /// `cos α |HH⟩ + sin α |VV⟩`.
    PureSchmidt { alpha: f64 },
    /// `p |Ψ⁻⟩⟨Ψ⁻| + (1 − p) I/4`.
    Werner { p: f64 },
    /// Weights on `Φ⁺, Φ⁻, Ψ⁺, Ψ⁻`.
    BellDiagonal { weights: [f64; 4] },
}

/// Exactly one of the three sources must be present. Complex numbers are
/// `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputState {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<StateFamily>,
}

impl InputState {
    pub fn family(f: StateFamily) -> Self {
        InputState { family: Some(f), ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let given = [self.amplitudes.is_some(), self.density.is_some(), self.family.is_some()];
        match given.iter().filter(|&&g| g).count() {
            1 => Ok(()),
            0 => Err(Error::ConfigInvalid("input_state needs one of amplitudes, density or family".into())),
            _ => Err(Error::ConfigInvalid(
                "input_state must give exactly one of amplitudes, density or family".into(),
            )),
        }
    }

    pub fn build(&self) -> Result<TwoQubitState> {
        self.validate()?;
        if let Some(a) = &self.amplitudes {
            if a.len() != 4 {
                return Err(Error::ConfigInvalid(format!("expected 4 amplitudes, got {}", a.len())));
            }
            let v = Vec4::from_fn(|i, _| c(a[i][0], a[i][1]));
            return Ok(TwoQubitState::Pure(PureState2Q::new(v)?));
        }
        if let Some(d) = &self.density {
            if d.len() != 4 || d.iter().any(|r| r.len() != 4) {
                return Err(Error::ConfigInvalid("density must be a 4x4 array of [re, im] pairs".into()));
            }
            let m = Mat4::from_fn(|i, j| c(d[i][j][0], d[i][j][1]));
            return Ok(TwoQubitState::Mixed(DensityMatrix4::new(m)?));
        }
        match self.family.expect("validated") {
            StateFamily::PureSchmidt { alpha } => {
                if !alpha.is_finite() {
                    return Err(Error::NonFinite);
                }
                Ok(TwoQubitState::Pure(PureState2Q::schmidt(alpha)))
            }
            StateFamily::Werner { p } => Ok(TwoQubitState::Mixed(DensityMatrix4::werner(p)?)),
            StateFamily::BellDiagonal { weights } => Ok(TwoQubitState::Mixed(DensityMatrix4::bell_diagonal(weights)?)),
        }
    }
}

/// Which state the tomography stage measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TomographyTarget {
    #[default]
    Input,
    /// The post-selected output of the concentration plan for the input.
    Concentrated,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolParams {
    /// Target Schmidt angle; defaults to `π/4`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_grid: Option<QuasiGrid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    /// Draw tomography counts instead of using expected values.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub sampled: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tomography_target: Option<TomographyTarget>,
    /// Random local filters tried against the mixed-state plan.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vbs: Option<VbsParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub netlist: Option<OpticalNetlist>,
    /// Output paths of A and B kept in circuit mode; defaults to `[0, 0]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub postselect: Option<[usize; 2]>,
}

impl ProtocolParams {
    pub fn beta(&self) -> f64 {
        self.beta.unwrap_or(FRAC_PI_4)
    }
}

/// File names, relative to the output directory.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    /// Optional; when present it must agree with the subcommand.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    pub input_state: InputState,
    #[serde(default)]
    pub protocol: ProtocolParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputPaths>,
}

impl ExperimentConfig {
    pub fn new(mode: Mode, input_state: InputState) -> Self {
        ExperimentConfig {
            schema_version: SCHEMA_VERSION,
            mode: Some(mode),
            input_state,
            protocol: ProtocolParams::default(),
            seed: None,
            sweep: None,
            output: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::ConfigInvalid(format!("cannot parse config: {e}")))?;
        if cfg.schema_version != SCHEMA_VERSION {
            return Err(Error::ConfigInvalid(format!(
                "schema_version {} unsupported (expected {SCHEMA_VERSION})",
                cfg.schema_version
            )));
        }
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Structural checks that do not need the state itself.
    pub fn validate(&self, mode: Mode) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::ConfigInvalid(format!("schema_version must be {SCHEMA_VERSION}")));
        }
        if let Some(m) = self.mode {
            if m != mode {
                return Err(Error::ConfigInvalid(format!(
                    "config declares mode {} but {} was requested",
                    m.name(),
                    mode.name()
                )));
            }
        }
        self.input_state.validate()?;
        let p = &self.protocol;
        if let Some(b) = p.beta {
            if !(0.0..=FRAC_PI_4).contains(&b) {
                return Err(Error::ConfigInvalid(format!("beta={b} must lie in [0, pi/4]")));
            }
        }
        let sampled = (mode == Mode::Tomography && p.sampled) || (mode == Mode::Mixed && p.search_samples.unwrap_or(0) > 0);
        if sampled && self.seed.is_none() {
            return Err(Error::ConfigInvalid("a seed is required when sampling".into()));
        }
        match mode {
            Mode::Tomography if p.shots.is_none() => Err(Error::ConfigInvalid("tomography needs protocol.shots".into())),
            Mode::Circuit if p.netlist.is_none() => Err(Error::ConfigInvalid("circuit mode needs protocol.netlist".into())),
            Mode::VbsCompare if p.vbs.is_none() && self.input_state.amplitudes.is_none() && !matches!(self.input_state.family, Some(StateFamily::PureSchmidt { .. })) => {
                Err(Error::ConfigInvalid("vbs-compare needs protocol.vbs unless the input is pure".into()))
            }
            _ => Ok(()),
        }
    }
}
