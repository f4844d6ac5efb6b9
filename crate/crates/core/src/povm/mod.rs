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

//! Two-outcome polarization POVMs, their dilation onto polarization ⊗ path,
//! and the Mach-Zehnder circuit that realizes the dilation.
//!
//! The dilation of `M₁ = diag(cos θ, cos ϑ)`, `M₂ = diag(sin θ, sin ϑ)` is the
//! polarization-controlled path rotation `diag(R_y(−2θ), R_y(−2ϑ))` in the
//! basis `|0_P 0_L⟩, |0_P 1_L⟩, |1_P 0_L⟩, |1_P 1_L⟩`. It factors as
//! `V₁ V₂ V₃ V₂ V₁`, where
//!
//! * `V₁` flips polarization on path 1 (an HWP at π/4),
//! * `V₂` is the polarizing beam splitter,
//! * `V₃` applies `R_y(−2θ)` on path 0 and `R_y(+2ϑ)` on path 1.
//!
//! The opposite signs in `V₃` are correct: conjugating by `V₂V₁` exchanges the
//! roles of polarization and path, and on the `|1_P⟩` block the path-1 rotation
//! is seen through a polarization flip, `X R_y(t) X = R_y(−t)`.

pub mod netlist;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optics::{hwp_matrix, on_path, pbs_matrix, ry, synthesize_spr, ElementKind};
use crate::qstate::{c, kron2, Arm, DensityMatrix4, Mat2, Mat4, PureState2Q, TwoQubitState, TOL, ZERO};

pub use netlist::{simulate_netlist, ModeRepr, ModeState, OpticalNetlist, PlacedElement, EMPTY_BRANCH};

/// Canonical two-outcome POVM, optionally flanked by unitaries:
/// `M₁ = post · diag(cos θ, cos ϑ) · pre`, `M₂ = post · diag(sin θ, sin ϑ) · pre`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PovmPair {
    pub theta: f64,
    pub vartheta: f64,
    pub pre_unitary: Option<Mat2>,
    pub post_unitary: Option<Mat2>,
}

impl PovmPair {
    pub fn new(theta: f64, vartheta: f64) -> Self {
        PovmPair { theta, vartheta, pre_unitary: None, post_unitary: None }
    }

    pub fn with_unitaries(mut self, pre: Option<Mat2>, post: Option<Mat2>) -> Self {
        self.pre_unitary = pre;
        self.post_unitary = post;
        self
    }

    pub fn kraus(&self) -> [Mat2; 2] {
        let d1 = Mat2::new(c(self.theta.cos(), 0.0), ZERO, ZERO, c(self.vartheta.cos(), 0.0));
        let d2 = Mat2::new(c(self.theta.sin(), 0.0), ZERO, ZERO, c(self.vartheta.sin(), 0.0));
        let pre = self.pre_unitary.unwrap_or_else(Mat2::identity);
        let post = self.post_unitary.unwrap_or_else(Mat2::identity);
        [post * d1 * pre, post * d2 * pre]
    }

    /// Largest entry of `M₁†M₁ + M₂†M₂ − I`.
    pub fn completeness_defect(&self) -> f64 {
        let [m1, m2] = self.kraus();
        let s = m1.adjoint() * m1 + m2.adjoint() * m2 - Mat2::identity();
        s.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// The dilation unitary in block form next to its five-gate factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct DilationCircuit {
    pub povm: PovmPair,
    pub dilation_unitary: Mat4,
    /// `[V₁, V₂, V₃, V₂, V₁]` in the order light meets them.
    pub gates: [Mat4; 5],
    /// Frobenius distance between the gate product and the block form.
    pub residual: f64,
}

impl DilationCircuit {
    pub fn gate_product(&self) -> Mat4 {
        self.gates.iter().fold(Mat4::identity(), |acc, g| g * acc)
    }

    /// Beam splitters, polarization flips and wave-plate sequences for the two
    /// interferometer arms, on photon `photon`. Elements reproduce the gate
    /// matrices exactly (phases included).
    pub fn netlist_elements(&self, photon: Arm) -> Vec<PlacedElement> {
        mach_zehnder(self.povm.theta, self.povm.vartheta, photon)
    }
}

/// `V₁`: polarization NOT on path 1.
pub fn gate_v1() -> Mat4 {
    on_path(&hwp_matrix(std::f64::consts::FRAC_PI_4), 1)
}

/// `V₂`: the polarizing beam splitter.
pub fn gate_v2() -> Mat4 {
    pbs_matrix()
}

/// `V₃`: `R_y(−2θ)` on path 0, `R_y(2ϑ)` on path 1.
pub fn gate_v3(theta: f64, vartheta: f64) -> Mat4 {
    on_path(&ry(-2.0 * theta), 0) * on_path(&ry(2.0 * vartheta), 1)
}

/// Block form `diag(R_y(−2θ), R_y(−2ϑ))`, blocks indexed by polarization.
pub fn dilation_block_form(theta: f64, vartheta: f64) -> Mat4 {
    let blocks = [ry(-2.0 * theta), ry(-2.0 * vartheta)];
    let mut u = Mat4::zeros();
    for (p, b) in blocks.iter().enumerate() {
        for l in 0..2 {
            for l2 in 0..2 {
                u[(2 * p + l, 2 * p + l2)] = b[(l, l2)];
            }
        }
    }
    u
}

pub fn build_dilation(povm: PovmPair) -> DilationCircuit {
    let (v1, v2, v3) = (gate_v1(), gate_v2(), gate_v3(povm.theta, povm.vartheta));
    let dilation_unitary = dilation_block_form(povm.theta, povm.vartheta);
    let mut circuit = DilationCircuit { povm, dilation_unitary, gates: [v1, v2, v3, v2, v1], residual: 0.0 };
    circuit.residual = (circuit.gate_product() - dilation_unitary).norm();
    debug_assert!(circuit.residual < 1e-12, "dilation factorization residual {}", circuit.residual);
    circuit
}

/// Wave plates realizing `m` exactly on path `location` of `photon`.
pub(crate) fn spr_elements(m: &Mat2, photon: Arm, location: usize) -> Vec<PlacedElement> {
    let seq = synthesize_spr(m).expect("rotation matrices are unitary");
    if (seq.realized() - Mat2::identity()).norm() < 1e-15 {
        return Vec::new();
    }
    seq.exact_elements().into_iter().map(|k| PlacedElement::new(k, photon, location)).collect()
}

/// `V₁ → PBS → (R_y(−2θ) on path 0, R_y(2ϑ) on path 1) → PBS → V₁`.
pub(crate) fn mach_zehnder(theta: f64, vartheta: f64, photon: Arm) -> Vec<PlacedElement> {
    let flip = PlacedElement::new(ElementKind::Hwp { angle: std::f64::consts::FRAC_PI_4 }, photon, 1);
    let pbs = PlacedElement::new(ElementKind::Pbs, photon, 0);
    let mut out = vec![flip, pbs];
    out.extend(spr_elements(&ry(-2.0 * theta), photon, 0));
    out.extend(spr_elements(&ry(2.0 * vartheta), photon, 1));
    out.extend([pbs, flip]);
    out
}

/// One measurement branch of a post-selected run.
#[derive(Debug, Clone, PartialEq)]
pub struct PostSelectedResult {
    /// Path the photon was found on (0 = success port).
    pub branch: usize,
    pub probability: f64,
    /// Renormalized state, `None` when the branch is empty.
    pub conditional_state: Option<TwoQubitState>,
}

/// Netlist realizing `povm` on photon `arm`: the pre rotation on the input
/// path, the interferometer, then the post rotation on both output paths.
pub fn povm_netlist(povm: &PovmPair, arm: Arm) -> OpticalNetlist {
    let mut n = match arm {
        Arm::A => OpticalNetlist::new(2, 1),
        Arm::B => OpticalNetlist::new(1, 2),
    };
    if let Some(pre) = &povm.pre_unitary {
        n.extend(spr_elements(pre, arm, 0));
    }
    n.extend(mach_zehnder(povm.theta, povm.vartheta, arm));
    if let Some(post) = &povm.post_unitary {
        n.extend(spr_elements(post, arm, 0));
        n.extend(spr_elements(post, arm, 1));
    }
    n
}

fn check_normalized(state: &TwoQubitState) -> Result<()> {
    let dev = match state {
        TwoQubitState::Pure(p) => (p.amplitudes().norm() - 1.0).abs(),
        TwoQubitState::Mixed(d) => (d.matrix().trace().re - 1.0).abs(),
    };
    if dev > TOL {
        return Err(Error::NotNormalized(dev));
    }
    Ok(())
}

/// Runs the interferometer on one photon and measures its path.
pub fn apply_povm(povm: &PovmPair, state: &TwoQubitState, arm: Arm) -> Result<[PostSelectedResult; 2]> {
    check_normalized(state)?;
    let net = povm_netlist(povm, arm);
    let out = simulate_netlist(&net, &ModeState::inject(state, net.paths))?;
    let branch = |l: usize| {
        let (la, lb) = match arm {
            Arm::A => (l, 0),
            Arm::B => (0, l),
        };
        let (probability, conditional_state) = out.post_select(la, lb);
        PostSelectedResult { branch: l, probability, conditional_state }
    };
    Ok([branch(0), branch(1)])
}

/// Same branches computed directly from the Kraus operators.
pub fn kraus_branches(povm: &PovmPair, state: &TwoQubitState, arm: Arm) -> Result<[PostSelectedResult; 2]> {
    check_normalized(state)?;
    let ks = povm.kraus();
    let lift = |k: &Mat2| match arm {
        Arm::A => kron2(k, &Mat2::identity()),
        Arm::B => kron2(&Mat2::identity(), k),
    };
    let branch = |l: usize| {
        let k = lift(&ks[l]);
        let (probability, conditional_state) = apply_operator(&k, state);
        PostSelectedResult { branch: l, probability, conditional_state }
    };
    Ok([branch(0), branch(1)])
}

/// Applies a (possibly non-unitary) two-qubit operator and renormalizes.
pub(crate) fn apply_operator(k: &Mat4, state: &TwoQubitState) -> (f64, Option<TwoQubitState>) {
    match state {
        TwoQubitState::Pure(p) => {
            let v = k * p.amplitudes();
            let prob = v.norm_squared();
            if prob < EMPTY_BRANCH {
                return (prob, None);
            }
            (prob, Some(TwoQubitState::Pure(PureState2Q::normalized(v).expect("non-empty"))))
        }
        TwoQubitState::Mixed(d) => {
            let m = k * d.matrix() * k.adjoint();
            let prob = m.trace().re;
            if prob < EMPTY_BRANCH {
                return (prob, None);
            }
            let m = m / c(prob, 0.0);
            let m = (m + m.adjoint()) * c(0.5, 0.0);
            (prob, Some(TwoQubitState::Mixed(DensityMatrix4::from_matrix_unchecked(m))))
        }
    }
}

/// Serializable description of a POVM for result documents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PovmAngles {
    pub theta: f64,
    pub vartheta: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{Vec4, ONE};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn zero_angles_give_identity() {
        let d = build_dilation(PovmPair::new(0.0, 0.0));
        assert!((d.dilation_unitary - Mat4::identity()).norm() < 1e-15);
        assert!((d.gate_product() - Mat4::identity()).norm() < 1e-15);
    }

    #[test]
    fn gate_product_matches_block_form() {
        for k in 0..40 {
            let t = -3.0 + 0.17 * k as f64;
            let v = 2.5 - 0.11 * k as f64;
            let d = build_dilation(PovmPair::new(t, v));
            assert!(d.residual < 1e-12, "residual {} at ({t}, {v})", d.residual);
        }
    }

    #[test]
    fn gates_v1_v2_are_involutions() {
        assert!((gate_v1() * gate_v1() - Mat4::identity()).norm() < 1e-12);
        assert!((gate_v2() * gate_v2() - Mat4::identity()).norm() < 1e-12);
    }

    #[test]
    fn theta_half_pi_blocks_horizontal_on_success_port() {
        let povm = PovmPair::new(FRAC_PI_2, 0.3);
        let hh = PureState2Q::new(Vec4::new(ONE, ZERO, ZERO, ZERO)).unwrap();
        let [b0, b1] = apply_povm(&povm, &hh.into(), Arm::A).unwrap();
        assert!(b0.probability.abs() < 1e-15);
        assert!(b0.conditional_state.is_none());
        assert!((b1.probability - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trivial_povm_passes_everything() {
        let s: TwoQubitState = PureState2Q::schmidt(0.4).into();
        let [b0, b1] = apply_povm(&PovmPair::new(0.0, 0.0), &s, Arm::B).unwrap();
        assert!((b0.probability - 1.0).abs() < 1e-14 && b1.probability.abs() < 1e-14);
        match b0.conditional_state.unwrap() {
            TwoQubitState::Pure(p) => assert!((p.fidelity(&PureState2Q::schmidt(0.4)) - 1.0).abs() < 1e-14),
            _ => unreachable!(),
        }
    }

    #[test]
    fn circuit_netlist_reproduces_dilation_unitary() {
        let d = build_dilation(PovmPair::new(0.7, -0.4));
        let mut n = OpticalNetlist::new(2, 1);
        n.extend(d.netlist_elements(Arm::A));
        let u = n.unitary().unwrap();
        // photon B is a spectator: the full unitary is dilation ⊗ I₂
        let want = d.dilation_unitary.kronecker(&nalgebra::Matrix2::<crate::qstate::C64>::identity());
        let want = crate::qstate::ComplexMat::new(nalgebra::DMatrix::from_fn(8, 8, |r, c| want[(r, c)])).unwrap();
        assert!(u.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn worked_example_branch_zero() {
        let alpha = std::f64::consts::FRAC_PI_6;
        let omega = (1.0 / 3f64.sqrt()).acos();
        let [b0, _] = apply_povm(&PovmPair::new(omega, 0.0), &PureState2Q::schmidt(alpha).into(), Arm::A).unwrap();
        assert!((b0.probability - 0.5).abs() < 1e-12);
        match b0.conditional_state.unwrap() {
            TwoQubitState::Pure(p) => assert!((p.fidelity(&PureState2Q::schmidt(FRAC_PI_4)) - 1.0).abs() < 1e-12),
            _ => unreachable!(),
        }
    }
}
