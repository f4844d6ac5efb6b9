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

//! Variable-beam-splitter filters expressed as interferometer plans.
//!
//! Four tunable transmissions act as the diagonal transmission matrix
//! `diag(η_HA η_HB, η_HA η_VB, η_VA η_HB, η_VA η_VB)`; each arm is the diagonal
//! filter `diag(η_H, η_V)`, i.e. `cos θ = η_H`, `cos δ = η_V`.

use nalgebra::Vector4;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{c, Mat4};

use super::{ArmPlan, ConcentrationPlan, FilterDecomposition, PlanKind};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VbsParams {
    pub eta_ha: f64,
    pub eta_va: f64,
    pub eta_hb: f64,
    pub eta_vb: f64,
}

impl VbsParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eta_ha", self.eta_ha),
            ("eta_va", self.eta_va),
            ("eta_hb", self.eta_hb),
            ("eta_vb", self.eta_vb),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::OutOfRange(format!("{name}={v} not in [0, 1]")));
            }
        }
        Ok(())
    }

    pub fn transmission_matrix(&self) -> Mat4 {
        let d = Vector4::new(
            self.eta_ha * self.eta_hb,
            self.eta_ha * self.eta_vb,
            self.eta_va * self.eta_hb,
            self.eta_va * self.eta_vb,
        );
        Mat4::from_diagonal(&d.map(|x| c(x, 0.0)))
    }
}

pub fn vbs_to_plan(v: &VbsParams) -> Result<ConcentrationPlan> {
    v.validate()?;
    ConcentrationPlan::new(
        PlanKind::Vbs,
        ArmPlan::from_decomposition(FilterDecomposition::diagonal(v.eta_ha, v.eta_va)),
        ArmPlan::from_decomposition(FilterDecomposition::diagonal(v.eta_hb, v.eta_vb)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concentration::{execute_plan, plan_pure, PureConcentrationSpec, SprSetting};
    use crate::qstate::TwoQubitState;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};

    #[test]
    fn unit_transmissions_are_identity() {
        let plan = vbs_to_plan(&VbsParams { eta_ha: 1.0, eta_va: 1.0, eta_hb: 1.0, eta_vb: 1.0 }).unwrap();
        assert!(plan.spr_settings.values().all(|s| *s == SprSetting::Identity));
    }

    #[test]
    fn reproduces_pure_worked_example() {
        let v = VbsParams { eta_ha: 1.0 / 3f64.sqrt(), eta_va: 1.0, eta_hb: 1.0, eta_vb: 1.0 };
        let spec = PureConcentrationSpec::new(FRAC_PI_6, FRAC_PI_4).unwrap();
        let input: TwoQubitState = spec.source().into();
        let x = execute_plan(&vbs_to_plan(&v).unwrap(), &input).unwrap();
        let y = execute_plan(&plan_pure(&spec).unwrap(), &input).unwrap();
        assert!((x.success_probability - y.success_probability).abs() < 1e-12);
        assert!((x.output_pure.unwrap().fidelity(&y.output_pure.unwrap()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn out_of_range() {
        let v = VbsParams { eta_ha: 1.2, eta_va: 1.0, eta_hb: 1.0, eta_vb: 1.0 };
        assert!(matches!(vbs_to_plan(&v), Err(Error::OutOfRange(_))));
    }
}
