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

//! Concentration protocols: plans (local filters plus the wave-plate settings
//! of the two-arm interferometer setup) and their execution.
//!
//! Each arm has four rotation slots. Slot 1 rotates polarization before the
//! interferometer, slots 2 and 3 sit inside it on paths 0 and 1, slot 4 rotates
//! the success port (path 0) afterwards. A filter `U · diag(cos θ, cos δ) · U′`
//! maps to slot 1 = `U′`, slot 2 = `R_y(−2θ)`, slot 3 = `R_y(2δ)`,
//! slot 4 = `U`. Success means both photons leave on path 0.

pub mod lorentz;
pub mod mixed;
pub mod pure;
pub mod search;
pub mod vbs;

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::Entanglement;
use crate::optics::{ry, synthesize_spr, ElementKind, WavePlateSequence};
use crate::povm::{apply_operator, simulate_netlist, ModeState, OpticalNetlist, PlacedElement};
use crate::qstate::{c, kron2, unitarity_defect, Arm, DensityMatrix4, Mat2, PureState2Q, TwoQubitState, ZERO};

pub use lorentz::{lorentz_normal_form, LorentzNormalForm};
pub use mixed::{plan_mixed, quasi_distill, QuasiGrid, QuasiStep};
pub use pure::{plan_pure, plan_pure_for_state, PureConcentrationSpec};
pub use search::{mixed_filter_search, pure_optimality_search, MixedSearchReport, PureSearchReport};
pub use vbs::{vbs_to_plan, VbsParams};

/// Rotation slot in the two-arm setup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SprSlot {
    A1,
    A2,
    A3,
    A4,
    B1,
    B2,
    B3,
    B4,
}

impl SprSlot {
    pub fn of(arm: Arm, index: u8) -> SprSlot {
        use SprSlot::*;
        match (arm, index) {
            (Arm::A, 1) => A1,
            (Arm::A, 2) => A2,
            (Arm::A, 3) => A3,
            (Arm::A, 4) => A4,
            (Arm::B, 1) => B1,
            (Arm::B, 2) => B2,
            (Arm::B, 3) => B3,
            (Arm::B, 4) => B4,
            _ => panic!("slot index {index} out of range"),
        }
    }
}

impl fmt::Display for SprSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// `filter = left · diag(cos θ, cos δ) · right`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterDecomposition {
    pub left: Mat2,
    pub cos_theta: f64,
    pub cos_delta: f64,
    pub right: Mat2,
}

impl FilterDecomposition {
    pub fn identity() -> Self {
        FilterDecomposition { left: Mat2::identity(), cos_theta: 1.0, cos_delta: 1.0, right: Mat2::identity() }
    }

    /// Diagonal filter with no flanking rotations.
    pub fn diagonal(cos_theta: f64, cos_delta: f64) -> Self {
        FilterDecomposition { cos_theta, cos_delta, ..Self::identity() }
    }

    /// Singular value decomposition, larger value first.
    pub fn of_filter(f: &Mat2) -> Self {
        let svd = f.svd(true, true);
        let (u, v_t) = (svd.u.expect("requested"), svd.v_t.expect("requested"));
        let s = svd.singular_values;
        let (i, j) = if s[0] >= s[1] { (0, 1) } else { (1, 0) };
        let left = Mat2::from_columns(&[u.column(i), u.column(j)]);
        let right = Mat2::from_rows(&[v_t.row(i), v_t.row(j)]);
        FilterDecomposition { left, cos_theta: s[i], cos_delta: s[j], right }
    }

    pub fn theta(&self) -> f64 {
        self.cos_theta.clamp(-1.0, 1.0).acos()
    }

    pub fn delta(&self) -> f64 {
        self.cos_delta.clamp(-1.0, 1.0).acos()
    }

    pub fn matrix(&self) -> Mat2 {
        self.left * Mat2::new(c(self.cos_theta, 0.0), ZERO, ZERO, c(self.cos_delta, 0.0)) * self.right
    }
}

/// Filter for one photon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmPlan {
    pub filter: Mat2,
    pub decomposition: FilterDecomposition,
}

impl ArmPlan {
    pub fn identity() -> Self {
        ArmPlan { filter: Mat2::identity(), decomposition: FilterDecomposition::identity() }
    }

    pub fn from_decomposition(decomposition: FilterDecomposition) -> Self {
        ArmPlan { filter: decomposition.matrix(), decomposition }
    }

    /// Scales `f` so its largest singular value is one, then decomposes it.
    pub fn from_filter(f: &Mat2) -> Result<Self> {
        let smax = f.svd(false, false).singular_values.max();
        if !(smax.is_finite() && smax > 0.0) {
            return Err(Error::ProtocolFailed("filter is zero or non-finite".into()));
        }
        let filter = f / c(smax, 0.0);
        Ok(ArmPlan { filter, decomposition: FilterDecomposition::of_filter(&filter) })
    }

    /// Targets for slots 1..=4.
    pub fn slot_targets(&self) -> [Mat2; 4] {
        let d = &self.decomposition;
        [d.right, ry(-2.0 * d.theta()), ry(2.0 * d.delta()), d.left]
    }
}

/// Wave-plate setting for a slot.
#[derive(Debug, Clone, PartialEq)]
pub enum SprSetting {
    Identity,
    Rotation { target: Mat2, sequence: WavePlateSequence },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PlanKind {
    Pure { alpha: f64, beta: f64, omega: f64 },
    Mixed,
    QuasiDistill { epsilon: f64 },
    Vbs,
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationPlan {
    pub kind: PlanKind,
    pub arms: [ArmPlan; 2],
    pub spr_settings: BTreeMap<SprSlot, SprSetting>,
    /// Path each photon must leave on for success.
    pub success_branch: [usize; 2],
    /// Closed-form success probability, when the protocol has one.
    pub predicted_probability: Option<f64>,
}

impl ConcentrationPlan {
    pub fn new(kind: PlanKind, a: ArmPlan, b: ArmPlan) -> Result<Self> {
        let mut spr_settings = BTreeMap::new();
        for (arm, plan) in [(Arm::A, &a), (Arm::B, &b)] {
            for (k, target) in plan.slot_targets().iter().enumerate() {
                let slot = SprSlot::of(arm, k as u8 + 1);
                let seq = synthesize_spr(target)?;
                let setting = if (seq.realized() - Mat2::identity()).norm() < 1e-15 {
                    SprSetting::Identity
                } else {
                    SprSetting::Rotation { target: *target, sequence: seq }
                };
                spr_settings.insert(slot, setting);
            }
        }
        let plan = ConcentrationPlan {
            kind,
            arms: [a, b],
            spr_settings,
            success_branch: [0, 0],
            predicted_probability: None,
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn identity() -> Self {
        Self::new(PlanKind::Custom, ArmPlan::identity(), ArmPlan::identity()).expect("identity plan")
    }

    pub fn arm(&self, arm: Arm) -> &ArmPlan {
        match arm {
            Arm::A => &self.arms[0],
            Arm::B => &self.arms[1],
        }
    }

    /// Decomposition reproduces the filter, singular values within `[0, 1]`,
    /// flanking matrices unitary.
    pub fn validate(&self) -> Result<()> {
        for plan in &self.arms {
            let d = &plan.decomposition;
            let dev = (d.matrix() - plan.filter).iter().map(|z| z.norm()).fold(0.0, f64::max);
            if dev > 1e-12 {
                return Err(Error::ProtocolFailed(format!("filter decomposition off by {dev:.3e}")));
            }
            for s in [d.cos_theta, d.cos_delta] {
                if !(-1e-12..=1.0 + 1e-12).contains(&s) {
                    return Err(Error::ProtocolFailed(format!("filter value {s} outside [0, 1]")));
                }
            }
            for u in [&d.left, &d.right] {
                let def = unitarity_defect(u);
                if def > 1e-10 {
                    return Err(Error::NotUnitary(def));
                }
            }
        }
        Ok(())
    }

    /// `A ⊗ B`.
    pub fn joint_filter(&self) -> crate::qstate::Mat4 {
        kron2(&self.arms[0].filter, &self.arms[1].filter)
    }

    /// Optical netlist for both arms, built from the slot settings.
    pub fn netlist(&self) -> OpticalNetlist {
        let mut n = OpticalNetlist::new(2, 2);
        for arm in [Arm::A, Arm::B] {
            let slot = |k: u8, location: usize| -> Vec<PlacedElement> {
                match self.spr_settings.get(&SprSlot::of(arm, k)) {
                    Some(SprSetting::Rotation { sequence, .. }) => sequence
                        .exact_elements()
                        .into_iter()
                        .map(|e| PlacedElement::new(e, arm, location))
                        .collect(),
                    _ => Vec::new(),
                }
            };
            let flip = PlacedElement::new(ElementKind::Hwp { angle: FRAC_PI_4 }, arm, 1);
            let pbs = PlacedElement::new(ElementKind::Pbs, arm, 0);
            n.extend(slot(1, 0));
            n.extend([flip, pbs]);
            n.extend(slot(2, 0));
            n.extend(slot(3, 1));
            n.extend([pbs, flip]);
            n.extend(slot(4, 0));
        }
        n
    }
}

/// What a plan produced on the success branch.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationOutcome {
    pub success_probability: f64,
    /// `None` when the success branch is empty.
    pub output_state: Option<DensityMatrix4>,
    /// Set when the input was pure.
    pub output_pure: Option<PureState2Q>,
    pub entanglement_before: Entanglement,
    pub entanglement_after: Option<Entanglement>,
}

fn outcome(input: &TwoQubitState, probability: f64, state: Option<TwoQubitState>) -> ConcentrationOutcome {
    let output_pure = match state {
        Some(TwoQubitState::Pure(p)) => Some(p),
        _ => None,
    };
    let output_state = state.map(|s| s.density());
    ConcentrationOutcome {
        success_probability: probability,
        output_state,
        output_pure,
        entanglement_before: Entanglement::of(&input.density()),
        entanglement_after: output_state.as_ref().map(Entanglement::of),
    }
}

/// Runs the full two-arm interferometer simulation and post-selects both
/// photons on path 0.
pub fn execute_plan(plan: &ConcentrationPlan, input: &TwoQubitState) -> Result<ConcentrationOutcome> {
    let net = plan.netlist();
    let out = simulate_netlist(&net, &ModeState::inject(input, net.paths))?;
    let (p, state) = out.post_select(plan.success_branch[0], plan.success_branch[1]);
    Ok(outcome(input, p, state))
}

/// Same outcome from the filter algebra `(A⊗B) ρ (A⊗B)†` alone.
pub fn execute_plan_kraus(plan: &ConcentrationPlan, input: &TwoQubitState) -> ConcentrationOutcome {
    let (p, state) = apply_operator(&plan.joint_filter(), input);
    outcome(input, p, state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_density, random_filter, rng_from_seed};

    #[test]
    fn identity_plan_leaves_state_alone() {
        let plan = ConcentrationPlan::identity();
        assert!(plan.spr_settings.values().all(|s| *s == SprSetting::Identity));
        let s: TwoQubitState = PureState2Q::schmidt(0.2).into();
        let out = execute_plan(&plan, &s).unwrap();
        assert!((out.success_probability - 1.0).abs() < 1e-14);
        assert!((out.output_pure.unwrap().fidelity(&PureState2Q::schmidt(0.2)) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn circuit_matches_filter_algebra() {
        let mut rng = rng_from_seed(11);
        for _ in 0..20 {
            let a = ArmPlan::from_filter(&random_filter(&mut rng)).unwrap();
            let b = ArmPlan::from_filter(&random_filter(&mut rng)).unwrap();
            let plan = ConcentrationPlan::new(PlanKind::Custom, a, b).unwrap();
            let rho: TwoQubitState = random_density(&mut rng).into();
            let x = execute_plan(&plan, &rho).unwrap();
            let y = execute_plan_kraus(&plan, &rho);
            assert!((x.success_probability - y.success_probability).abs() < 1e-12);
            let d = x.output_state.unwrap().max_abs_diff(&y.output_state.unwrap());
            assert!(d < 1e-10, "{d}");
        }
    }

    #[test]
    fn filter_decomposition_orders_values() {
        let f = Mat2::new(c(0.3, 0.0), ZERO, ZERO, c(1.0, 0.0));
        let d = FilterDecomposition::of_filter(&f);
        assert!((d.cos_theta - 1.0).abs() < 1e-15 && (d.cos_delta - 0.3).abs() < 1e-15);
        assert!((d.matrix() - f).norm() < 1e-14);
    }
}
