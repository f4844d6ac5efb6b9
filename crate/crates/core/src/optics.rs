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

//! Jones-matrix model of the optical toolbox: wave plates, phase shifters and
//! polarizing beam splitters, plus synthesis of an arbitrary polarization
//! rotation as `phase shifter → HWP → phase shifter`.
//!
//! Conventions (fixed here and nowhere else):
//!
//! * HWP with fast axis at angle φ: `[[cos 2φ, sin 2φ], [sin 2φ, −cos 2φ]]`.
//! * QWP with fast axis at angle φ: `R(φ) · diag(1, i) · R(−φ)` where `R` is
//!   the real rotation by φ. At φ = 0 this is exactly `diag(1, i)`, and
//!   `QWP(φ)² = HWP(φ)` with no leftover phase.
//! * Phase shifter on component `V` with phase φ: `diag(1, e^{iφ})`.
//! * `R_y(t) = [[cos t/2, −sin t/2], [sin t/2, cos t/2]]`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{c, unitarity_defect, Mat2, Mat4, C64, ONE, ZERO};

/// Polarization component a phase shifter acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Component {
    H,
    V,
}

pub fn hwp_matrix(plate_angle: f64) -> Mat2 {
    let (s, co) = (2.0 * plate_angle).sin_cos();
    Mat2::new(c(co, 0.0), c(s, 0.0), c(s, 0.0), c(-co, 0.0))
}

pub fn qwp_matrix(plate_angle: f64) -> Mat2 {
    let r = rotation(plate_angle);
    r * Mat2::new(ONE, ZERO, ZERO, c(0.0, 1.0)) * r.transpose()
}

pub fn phase_shifter_matrix(phase: f64, component: Component) -> Mat2 {
    let p = C64::from_polar(1.0, phase);
    match component {
        Component::H => Mat2::new(p, ZERO, ZERO, ONE),
        Component::V => Mat2::new(ONE, ZERO, ZERO, p),
    }
}

fn rotation(angle: f64) -> Mat2 {
    let (s, co) = angle.sin_cos();
    Mat2::new(c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0))
}

/// Rotation about ŷ by `angle`.
pub fn ry(angle: f64) -> Mat2 {
    let (s, co) = (0.5 * angle).sin_cos();
    Mat2::new(c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0))
}

/// Parameters of a polarization rotation
/// `[[e^{−iξ} cos θ, e^{−iι} sin θ], [e^{iι} sin θ, −e^{iξ} cos θ]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SprParams {
    pub xi: f64,
    pub iota: f64,
    pub theta: f64,
}

impl SprParams {
    pub fn matrix(&self) -> Mat2 {
        spr_matrix(self)
    }
}

pub fn spr_matrix(p: &SprParams) -> Mat2 {
    let (st, ct) = p.theta.sin_cos();
    Mat2::new(
        C64::from_polar(ct, -p.xi),
        C64::from_polar(st, -p.iota),
        C64::from_polar(st, p.iota),
        -C64::from_polar(ct, p.xi),
    )
}

/// A single-photon optical element. Elements that act only on polarization
/// have a Jones matrix; the beam splitter and path swap act on polarization
/// and path together.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ElementKind {
    Hwp { angle: f64 },
    Qwp { angle: f64 },
    PhaseShifter { phase: f64, component: Component },
    /// Transmits `H` (path unchanged), reflects `V` (path toggled).
    Pbs,
    /// Swaps the two paths regardless of polarization.
    LocationNot,
    Identity,
}

impl ElementKind {
    /// Jones matrix for polarization-only elements.
    pub fn jones(&self) -> Option<Mat2> {
        match *self {
            ElementKind::Hwp { angle } => Some(hwp_matrix(angle)),
            ElementKind::Qwp { angle } => Some(qwp_matrix(angle)),
            ElementKind::PhaseShifter { phase, component } => Some(phase_shifter_matrix(phase, component)),
            ElementKind::Identity => Some(Mat2::identity()),
            ElementKind::Pbs | ElementKind::LocationNot => None,
        }
    }

    /// Matrix on polarization ⊗ path, basis `|0_P 0_L⟩, |0_P 1_L⟩, |1_P 0_L⟩,
    /// |1_P 1_L⟩`. Polarization elements are placed on path `location`.
    pub fn path_matrix(&self, location: usize) -> Mat4 {
        match self {
            ElementKind::Pbs => pbs_matrix(),
            ElementKind::LocationNot => location_not_matrix(),
            other => {
                let j = other.jones().expect("polarization element");
                on_path(&j, location)
            }
        }
    }

    pub fn is_polarization_only(&self) -> bool {
        self.jones().is_some()
    }
}

/// Polarization-controlled path NOT: `|p, l⟩ → |p, l ⊕ p⟩`.
pub fn pbs_matrix() -> Mat4 {
    permutation4(|p, l| (p, l ^ p))
}

/// `|p, l⟩ → |p, l ⊕ 1⟩`.
pub fn location_not_matrix() -> Mat4 {
    permutation4(|p, l| (p, l ^ 1))
}

fn permutation4(f: impl Fn(usize, usize) -> (usize, usize)) -> Mat4 {
    let mut m = Mat4::zeros();
    for p in 0..2 {
        for l in 0..2 {
            let (p2, l2) = f(p, l);
            m[(2 * p2 + l2, 2 * p + l)] = ONE;
        }
    }
    m
}

/// Embeds a Jones matrix acting only on path `location`.
pub fn on_path(j: &Mat2, location: usize) -> Mat4 {
    assert!(location < 2, "path index {location} out of range");
    let mut m = Mat4::identity();
    for a in 0..2 {
        for b in 0..2 {
            m[(2 * a + location, 2 * b + location)] = j[(a, b)];
        }
    }
    m
}

/// Wave plates realizing a target rotation, listed in the order light meets
/// them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavePlateSequence {
    pub elements: Vec<ElementKind>,
    pub params: SprParams,
    /// `target = e^{i·global_phase} · product(elements)`.
    pub global_phase: f64,
}

impl WavePlateSequence {
    /// Product of the element matrices (last element leftmost).
    pub fn product(&self) -> Mat2 {
        self.elements
            .iter()
            .fold(Mat2::identity(), |acc, e| e.jones().expect("wave plate sequence element") * acc)
    }

    /// `e^{i·global_phase} · product()`.
    pub fn realized(&self) -> Mat2 {
        self.product() * C64::from_polar(1.0, self.global_phase)
    }

    /// The elements plus a common phase on both components, so the result
    /// reproduces the target exactly rather than up to phase.
    pub fn exact_elements(&self) -> Vec<ElementKind> {
        let mut out = self.elements.clone();
        if wrap_phase(self.global_phase) != 0.0 {
            for component in [Component::H, Component::V] {
                out.push(ElementKind::PhaseShifter { phase: self.global_phase, component });
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        crate::qstate::phase_invariant_distance(&self.product(), &Mat2::identity()) < 1e-12
    }
}

/// Maps an angle into `(−π, π]`.
pub fn wrap_phase(x: f64) -> f64 {
    let mut y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    }
    if y <= -PI {
        y += 2.0 * PI;
    }
    y
}

/// Closed-form decomposition of a 2×2 unitary into
/// `phase shifter(V, ξ−ι) → HWP(θ/2) → phase shifter(V, ξ+ι)`.
///
/// The rotation form has determinant −1, so the target's determinant fixes
/// the global phase. θ is taken in `[0, π/2]`, phases in `(−π, π]`.
pub fn synthesize_spr(target: &Mat2) -> Result<WavePlateSequence> {
    let defect = unitarity_defect(target);
    if !defect.is_finite() || defect > 1e-10 {
        return Err(Error::NotUnitary(defect));
    }
    let det = target.determinant();
    let gamma = 0.5 * (-det).arg();
    let u = target * C64::from_polar(1.0, -gamma);

    let theta = u[(0, 1)].norm().atan2(u[(0, 0)].norm());
    let diag = u[(0, 0)].conj() - u[(1, 1)];
    let off = u[(1, 0)] + u[(0, 1)].conj();
    let xi = if diag.norm() > 1e-300 { wrap_phase(diag.arg()) } else { 0.0 };
    let iota = if off.norm() > 1e-300 { wrap_phase(off.arg()) } else { 0.0 };

    let params = SprParams { xi, iota, theta };
    let elements = vec![
        ElementKind::PhaseShifter { phase: wrap_phase(xi - iota), component: Component::V },
        ElementKind::Hwp { angle: 0.5 * theta },
        ElementKind::PhaseShifter { phase: wrap_phase(xi + iota), component: Component::V },
    ];
    Ok(WavePlateSequence { elements, params, global_phase: wrap_phase(gamma - xi) })
}
