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

//! Single-copy concentration of `cos α |HH⟩ + sin α |VV⟩` towards
//! `cos β |HH⟩ + sin β |VV⟩`.
//!
//! Filtering photon A with `diag(cos ω, 1)`, `cos ω = tan α / tan β`, leaves
//! amplitudes `cos α cos ω` and `sin α`, whose ratio is `tan β`. The branch is
//! kept with probability `sin² α / sin² β`, the optimum for single-copy
//! transformations.

use std::f64::consts::FRAC_PI_4;

use nalgebra::Matrix2;

use crate::error::{Error, Result};
use crate::qstate::{PureState2Q, C64};

use super::{ArmPlan, ConcentrationPlan, FilterDecomposition, PlanKind};

/// Source and target Schmidt angles, `0 ≤ α ≤ β ≤ π/4`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PureConcentrationSpec {
    pub alpha: f64,
    pub beta: f64,
}

impl PureConcentrationSpec {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let s = PureConcentrationSpec { alpha, beta };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let range = 0.0..=FRAC_PI_4 + 1e-15;
        if !(self.alpha.is_finite() && self.beta.is_finite()) {
            return Err(Error::InvalidAngles("angles must be finite".into()));
        }
        if !range.contains(&self.alpha) || !range.contains(&self.beta) {
            return Err(Error::InvalidAngles(format!(
                "alpha={} and beta={} must lie in [0, pi/4]",
                self.alpha, self.beta
            )));
        }
        if self.alpha > self.beta {
            return Err(Error::InvalidAngles(format!(
                "alpha={} exceeds beta={}; concentration cannot lower entanglement",
                self.alpha, self.beta
            )));
        }
        Ok(())
    }

    /// `ω = arccos(tan α / tan β)`; zero when `α = β`.
    pub fn omega(&self) -> f64 {
        if self.alpha == self.beta {
            return 0.0;
        }
        (self.alpha.tan() / self.beta.tan()).clamp(0.0, 1.0).acos()
    }

    /// `sin² α / sin² β`, with `P = 1` when `α = β`.
    pub fn success_probability(&self) -> f64 {
        if self.alpha == self.beta {
            return 1.0;
        }
        (self.alpha.sin() / self.beta.sin()).powi(2)
    }

    pub fn source(&self) -> PureState2Q {
        PureState2Q::schmidt(self.alpha)
    }

    pub fn target(&self) -> PureState2Q {
        PureState2Q::schmidt(self.beta)
    }
}

/// Filter `diag(cos ω, 1)` on photon A, nothing on B; only slot A2 rotates.
pub fn plan_pure(spec: &PureConcentrationSpec) -> Result<ConcentrationPlan> {
    spec.validate()?;
    let omega = spec.omega();
    let a = ArmPlan::from_decomposition(FilterDecomposition::diagonal(omega.cos(), 1.0));
    let mut plan = ConcentrationPlan::new(
        PlanKind::Pure { alpha: spec.alpha, beta: spec.beta, omega },
        a,
        ArmPlan::identity(),
    )?;
    plan.predicted_probability = Some(spec.success_probability());
    Ok(plan)
}

/// Schmidt decomposition `ψ = Σ_k s_k (U|k⟩) ⊗ (V*|k⟩)` with `s₀ ≥ s₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Schmidt {
    pub alpha: f64,
    pub u: Matrix2<C64>,
    pub v: Matrix2<C64>,
}

pub fn schmidt_decomposition(psi: &PureState2Q) -> Schmidt {
    let a = psi.amplitudes();
    let coeff = Matrix2::new(a[0], a[1], a[2], a[3]);
    let svd = coeff.svd(true, true);
    let (u, v_t) = (svd.u.expect("requested"), svd.v_t.expect("requested"));
    let s = svd.singular_values;
    let (i, j) = if s[0] >= s[1] { (0, 1) } else { (1, 0) };
    let u = Matrix2::from_columns(&[u.column(i), u.column(j)]);
    let v = Matrix2::from_columns(&[v_t.row(i).adjoint(), v_t.row(j).adjoint()]);
    Schmidt { alpha: s[j].atan2(s[i]), u, v }
}

/// Concentrates an arbitrary pure state to `cos β |HH⟩ + sin β |VV⟩`: slot 1
/// of each arm rotates into the Schmidt basis, then the standard filter runs.
pub fn plan_pure_for_state(psi: &PureState2Q, beta: f64) -> Result<ConcentrationPlan> {
    let sd = schmidt_decomposition(psi);
    let spec = PureConcentrationSpec::new(sd.alpha.min(FRAC_PI_4), beta)?;
    let omega = spec.omega();
    let mut da = FilterDecomposition::diagonal(omega.cos(), 1.0);
    da.right = sd.u.adjoint();
    let mut db = FilterDecomposition::identity();
    db.right = sd.v.transpose();
    let mut plan = ConcentrationPlan::new(
        PlanKind::Pure { alpha: spec.alpha, beta, omega },
        ArmPlan::from_decomposition(da),
        ArmPlan::from_decomposition(db),
    )?;
    plan.predicted_probability = Some(spec.success_probability());
    Ok(plan)
}
