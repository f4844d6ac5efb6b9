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

//! Mixed-state concentration through the Lorentz normal form, and the
//! quasi-distillation family for states without a diagonal normal form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{c, DensityMatrix4, Mat2, ZERO};

use super::lorentz::{balance_marginals, filter_of_lorentz, lorentz_normal_form};
use super::{ArmPlan, ConcentrationPlan, FilterDecomposition, PlanKind};

/// Geometric grid of filter strengths `ε ∈ [min_epsilon, 1]`, starting at 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuasiGrid {
    pub min_epsilon: f64,
    pub points: usize,
}

impl Default for QuasiGrid {
    fn default() -> Self {
        QuasiGrid { min_epsilon: 1e-3, points: 20 }
    }
}

impl QuasiGrid {
    pub fn values(&self) -> Result<Vec<f64>> {
        if !(self.min_epsilon > 0.0 && self.min_epsilon <= 1.0) {
            return Err(Error::OutOfRange(format!("min_epsilon {} not in (0, 1]", self.min_epsilon)));
        }
        Ok(match self.points {
            0 => Vec::new(),
            1 => vec![1.0],
            n => (0..n)
                .map(|k| self.min_epsilon.powf(k as f64 / (n - 1) as f64))
                .collect(),
        })
    }
}

/// Balancing rounds used to find the singular filtering direction.
const QUASI_DIRECTION_ITERS: usize = 400;

/// Local filters turning `rho` into its Bell-diagonal normal form, or the
/// strongest member of the default quasi-distillation family when no such
/// form exists.
pub fn plan_mixed(rho: &DensityMatrix4) -> Result<ConcentrationPlan> {
    let nf = lorentz_normal_form(&rho.to_rmatrix())?;
    if !nf.diagonalizable {
        let steps = quasi_distill(rho, &QuasiGrid::default())?;
        return steps
            .into_iter()
            .last()
            .map(|s| s.plan)
            .ok_or_else(|| Error::ProtocolFailed("empty quasi-distillation grid".into()));
    }
    let a = ArmPlan::from_filter(&filter_of_lorentz(&nf.l_a))?;
    let b = ArmPlan::from_filter(&filter_of_lorentz(&nf.l_b))?;
    ConcentrationPlan::new(PlanKind::Mixed, a, b)
}

/// One point of the quasi-distillation family.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiStep {
    pub epsilon: f64,
    pub plan: ConcentrationPlan,
}

/// Filters `U · diag(1, ε) · U′` on both photons, along the direction in which
/// marginal balancing diverges. `ε = 1` is the identity; as `ε → 0` the output
/// approaches the limiting entangled state and the success probability
/// vanishes.
pub fn quasi_distill(rho: &DensityMatrix4, grid: &QuasiGrid) -> Result<Vec<QuasiStep>> {
    let nf = lorentz_normal_form(&rho.to_rmatrix())?;
    if nf.diagonalizable {
        return Err(Error::NotApplicable(
            "state has a diagonal Lorentz normal form; use plan_mixed".into(),
        ));
    }
    let bal = balance_marginals(rho.matrix(), QUASI_DIRECTION_ITERS, false).ok_or_else(|| {
        Error::ProtocolFailed("a reduced state is singular; no filtering direction exists".into())
    })?;
    let dirs = [
        FilterDecomposition::of_filter(&bal.filter_a),
        FilterDecomposition::of_filter(&bal.filter_b),
    ];
    grid.values()?
        .into_iter()
        .map(|eps| {
            let arm = |d: &FilterDecomposition| {
                let f = d.left * Mat2::new(c(1.0, 0.0), ZERO, ZERO, c(eps, 0.0)) * d.right;
                ArmPlan { filter: f, decomposition: FilterDecomposition { cos_theta: 1.0, cos_delta: eps, ..*d } }
            };
            let plan = ConcentrationPlan::new(PlanKind::QuasiDistill { epsilon: eps }, arm(&dirs[0]), arm(&dirs[1]))?;
            Ok(QuasiStep { epsilon: eps, plan })
        })
        .collect()
}
