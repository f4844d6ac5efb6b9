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

//! Result documents and their tabular form.

use serde::{Deserialize, Serialize};

use crate::concentration::{ConcentrationPlan, MixedSearchReport, PlanKind, SprSetting, SprSlot, VbsParams};
use crate::error::{Error, Result};
use crate::measures::Entanglement;
use crate::optics::SprParams;
use crate::qstate::{DensityMatrix4, Mat2, PureState2Q, TwoQubitState};
use crate::tomography::CountRecord;

use super::config::{ExperimentConfig, Mode};

/// State written as `{"amplitudes": [...]}` or `{"density": [[...]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateDoc {
    Amplitudes(Vec<[f64; 2]>),
    Density(Vec<Vec<[f64; 2]>>),
}

impl StateDoc {
    pub fn pure(p: &PureState2Q) -> Self {
        StateDoc::Amplitudes(p.amplitudes().iter().map(|z| [z.re, z.im]).collect())
    }

    pub fn mixed(d: &DensityMatrix4) -> Self {
        let m = d.matrix();
        StateDoc::Density((0..4).map(|i| (0..4).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect())
    }

    pub fn of(s: &TwoQubitState) -> Self {
        match s {
            TwoQubitState::Pure(p) => Self::pure(p),
            TwoQubitState::Mixed(d) => Self::mixed(d),
        }
    }

    fn values(&self) -> Vec<f64> {
        match self {
            StateDoc::Amplitudes(a) => a.iter().flatten().copied().collect(),
            StateDoc::Density(d) => d.iter().flatten().flatten().copied().collect(),
        }
    }
}

/// One SPR slot that is not the identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlotDoc {
    pub slot: SprSlot,
    pub target: Vec<[f64; 2]>,
    pub params: SprParams,
    pub global_phase: f64,
}

fn mat2_doc(m: &Mat2) -> Vec<[f64; 2]> {
    // row-major
    (0..2).flat_map(|i| (0..2).map(move |j| [m[(i, j)].re, m[(i, j)].im])).collect()
}

pub fn slot_docs(plan: &ConcentrationPlan) -> Vec<SlotDoc> {
    plan.spr_settings
        .iter()
        .filter_map(|(slot, s)| match s {
            SprSetting::Identity => None,
            SprSetting::Rotation { target, sequence } => Some(SlotDoc {
                slot: *slot,
                target: mat2_doc(target),
                params: sequence.params,
                global_phase: sequence.global_phase,
            }),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasiRow {
    pub epsilon: f64,
    pub success_probability: f64,
    pub entanglement: Option<Entanglement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchDoc {
    pub samples: usize,
    pub comparable: usize,
    /// Absent when no sample reached the plan's success probability.
    pub max_eof_excess: Option<f64>,
}

impl From<MixedSearchReport> for SearchDoc {
    fn from(r: MixedSearchReport) -> Self {
        SearchDoc {
            samples: r.samples,
            comparable: r.comparable,
            max_eof_excess: r.max_eof_excess.is_finite().then_some(r.max_eof_excess),
        }
    }
}

/// Mode-specific part of a result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Details {
    Plan {
        plan: PlanKind,
        predicted_probability: Option<f64>,
        slots: Vec<SlotDoc>,
    },
    Mixed {
        plan: PlanKind,
        diagonalizable: bool,
        /// Normal-form diagonal scaled so the first entry is 1.
        normal_form: [f64; 4],
        output_off_diagonal: Option<f64>,
        slots: Vec<SlotDoc>,
        #[serde(skip_serializing_if = "Option::is_none")]
        quasi_family: Option<Vec<QuasiRow>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        search: Option<SearchDoc>,
    },
    VbsCompare {
        vbs: VbsParams,
        /// Largest entry of the difference from the direct transmission action.
        transmission_deviation: f64,
        probability_deviation: f64,
        /// Same comparison against the interferometric pure-state plan.
        #[serde(skip_serializing_if = "Option::is_none")]
        pure_plan_deviation: Option<f64>,
    },
    Tomography {
        shots: u64,
        sampled: bool,
        counts: Vec<CountRecord>,
        trace_distance: f64,
    },
    Circuit {
        postselect: [usize; 2],
        modes: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub schema_version: u32,
    pub mode: Mode,
    pub config: ExperimentConfig,
    pub success_probability: f64,
    pub entanglement_before: Entanglement,
    pub entanglement_after: Option<Entanglement>,
    pub output_state: Option<StateDoc>,
    pub fidelity_to_target: Option<f64>,
    pub details: Details,
    /// Only filled when timing is requested, so default output stays
    /// reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl ResultRecord {
    pub fn check_finite(&self) -> Result<()> {
        let mut v = vec![self.success_probability, self.entanglement_before.concurrence, self.entanglement_before.eof];
        if let Some(e) = self.entanglement_after {
            v.extend([e.concurrence, e.eof]);
        }
        v.extend(self.fidelity_to_target);
        v.extend(self.wall_time_s);
        if let Some(s) = &self.output_state {
            v.extend(s.values());
        }
        match &self.details {
            Details::Mixed { normal_form, output_off_diagonal, .. } => {
                v.extend(normal_form);
                v.extend(*output_off_diagonal);
            }
            Details::VbsCompare { transmission_deviation, probability_deviation, pure_plan_deviation, .. } => {
                v.extend([*transmission_deviation, *probability_deviation]);
                v.extend(*pure_plan_deviation);
            }
            Details::Tomography { trace_distance, .. } => v.push(*trace_distance),
            Details::Plan { predicted_probability, .. } => v.extend(*predicted_probability),
            Details::Circuit { .. } => {}
        }
        if v.iter().all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err(Error::ProtocolFailed("result contains a non-finite number".into()))
        }
    }

    pub fn scalars(&self) -> Scalars {
        Scalars {
            success_probability: Some(self.success_probability),
            concurrence_before: Some(self.entanglement_before.concurrence),
            eof_before: Some(self.entanglement_before.eof),
            concurrence_after: self.entanglement_after.map(|e| e.concurrence),
            eof_after: self.entanglement_after.map(|e| e.eof),
            fidelity_to_target: self.fidelity_to_target,
        }
    }
}

/// Scalar columns shared by single-run and sweep tables.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Scalars {
    pub success_probability: Option<f64>,
    pub concurrence_before: Option<f64>,
    pub eof_before: Option<f64>,
    pub concurrence_after: Option<f64>,
    pub eof_after: Option<f64>,
    pub fidelity_to_target: Option<f64>,
}

impl Scalars {
    pub const HEADER: [&'static str; 6] = [
        "success_probability",
        "concurrence_before",
        "eof_before",
        "concurrence_after",
        "eof_after",
        "fidelity_to_target",
    ];

    pub fn cells(&self) -> [String; 6] {
        [
            self.success_probability,
            self.concurrence_before,
            self.eof_before,
            self.concurrence_after,
            self.eof_after,
            self.fidelity_to_target,
        ]
        .map(|x| x.map(format_number).unwrap_or_default())
    }
}

/// Seventeen significant digits in scientific notation, locale-free.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn single_row_csv(record: &ResultRecord) -> String {
    let mut out = String::from("mode,");
    out.push_str(&Scalars::HEADER.join(","));
    out.push('\n');
    out.push_str(record.mode.name());
    for cell in record.scalars().cells() {
        out.push(',');
        out.push_str(&cell);
    }
    out.push('\n');
    out
}
