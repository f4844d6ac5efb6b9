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

//! Optical netlists over polarization ⊗ path modes of two photons.
//!
//! Each photon carries a polarization qubit and either one path (no
//! interferometer in its arm) or two. Within a photon the ordering is
//! polarization-major, `|0_P 0_L⟩, |0_P 1_L⟩, |1_P 0_L⟩, |1_P 1_L⟩`, and photon
//! A is the leftmost tensor factor.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optics::ElementKind;
use crate::qstate::{c, Arm, ComplexMat, DensityMatrix4, PureState2Q, TwoQubitState, Vec4, C64, ZERO};

/// An element together with where it sits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlacedElement {
    #[serde(flatten)]
    pub kind: ElementKind,
    pub photon: Arm,
    /// Path the element sits on. Ignored for the beam splitter and path swap,
    /// which act on both paths of the photon.
    #[serde(default)]
    pub location: usize,
}

impl PlacedElement {
    pub fn new(kind: ElementKind, photon: Arm, location: usize) -> Self {
        PlacedElement { kind, photon, location }
    }
}

/// Ordered list of elements; light meets `elements[0]` first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpticalNetlist {
    /// Number of paths (1 or 2) available to photons A and B.
    pub paths: [usize; 2],
    pub elements: Vec<PlacedElement>,
}

impl OpticalNetlist {
    pub fn new(paths_a: usize, paths_b: usize) -> Self {
        OpticalNetlist { paths: [paths_a, paths_b], elements: Vec::new() }
    }

    pub fn push(&mut self, e: PlacedElement) -> &mut Self {
        self.elements.push(e);
        self
    }

    pub fn extend(&mut self, es: impl IntoIterator<Item = PlacedElement>) -> &mut Self {
        self.elements.extend(es);
        self
    }

    pub fn dim(&self) -> usize {
        4 * self.paths[0] * self.paths[1]
    }

    fn paths_of(&self, arm: Arm) -> usize {
        match arm {
            Arm::A => self.paths[0],
            Arm::B => self.paths[1],
        }
    }

    pub fn validate(&self) -> Result<()> {
        for &n in &self.paths {
            if n != 1 && n != 2 {
                return Err(Error::InvalidNetlist(format!("a photon has {n} paths; expected 1 or 2")));
            }
        }
        for (i, e) in self.elements.iter().enumerate() {
            let n = self.paths_of(e.photon);
            if e.kind.is_polarization_only() {
                if e.location >= n {
                    return Err(Error::InvalidNetlist(format!(
                        "element {i} on path {} of photon {} which has {n} path(s)",
                        e.location, e.photon
                    )));
                }
            } else if n != 2 {
                return Err(Error::InvalidNetlist(format!(
                    "element {i} needs two paths on photon {}",
                    e.photon
                )));
            }
        }
        Ok(())
    }

    /// Full-space matrix of one element.
    fn element_matrix(&self, e: &PlacedElement) -> DMatrix<C64> {
        let local = match self.paths_of(e.photon) {
            1 => {
                let j = e.kind.jones().expect("validated");
                DMatrix::from_fn(2, 2, |r, col| j[(r, col)])
            }
            _ => {
                let m = e.kind.path_matrix(e.location);
                DMatrix::from_fn(4, 4, |r, col| m[(r, col)])
            }
        };
        let dim_a = 2 * self.paths[0];
        let dim_b = 2 * self.paths[1];
        match e.photon {
            Arm::A => local.kronecker(&DMatrix::identity(dim_b, dim_b)),
            Arm::B => DMatrix::identity(dim_a, dim_a).kronecker(&local),
        }
    }

    /// Unitary of the whole netlist.
    pub fn unitary(&self) -> Result<ComplexMat> {
        self.validate()?;
        let n = self.dim();
        let u = self
            .elements
            .iter()
            .fold(DMatrix::identity(n, n), |acc, e| self.element_matrix(e) * acc);
        ComplexMat::new(u)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModeRepr {
    Pure(DVector<C64>),
    Mixed(DMatrix<C64>),
}

/// State of both photons over polarization and paths.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeState {
    pub paths: [usize; 2],
    pub repr: ModeRepr,
}

fn mode_index(paths: [usize; 2], pa: usize, la: usize, pb: usize, lb: usize) -> usize {
    ((pa * paths[0] + la) * 2 + pb) * paths[1] + lb
}

impl ModeState {
    /// Places a polarization state on path 0 of each photon.
    pub fn inject(state: &TwoQubitState, paths: [usize; 2]) -> Self {
        let dim = 4 * paths[0] * paths[1];
        let pol = |k: usize| (k / 2, k % 2);
        match state {
            TwoQubitState::Pure(p) => {
                let mut v = DVector::from_element(dim, ZERO);
                for (k, a) in p.amplitudes().iter().enumerate() {
                    let (pa, pb) = pol(k);
                    v[mode_index(paths, pa, 0, pb, 0)] = *a;
                }
                ModeState { paths, repr: ModeRepr::Pure(v) }
            }
            TwoQubitState::Mixed(d) => {
                let mut m = DMatrix::from_element(dim, dim, ZERO);
                for r in 0..4 {
                    for col in 0..4 {
                        let (ra, rb) = pol(r);
                        let (ca, cb) = pol(col);
                        m[(mode_index(paths, ra, 0, rb, 0), mode_index(paths, ca, 0, cb, 0))] =
                            d.matrix()[(r, col)];
                    }
                }
                ModeState { paths, repr: ModeRepr::Mixed(m) }
            }
        }
    }

    pub fn dim(&self) -> usize {
        match &self.repr {
            ModeRepr::Pure(v) => v.len(),
            ModeRepr::Mixed(m) => m.nrows(),
        }
    }

    /// Norm (pure) or trace (mixed).
    pub fn weight(&self) -> f64 {
        match &self.repr {
            ModeRepr::Pure(v) => v.norm_squared(),
            ModeRepr::Mixed(m) => m.trace().re,
        }
    }

    /// Projects photon A onto path `loc_a` and photon B onto path `loc_b`.
    /// Returns the Born probability and the unnormalized polarization block.
    pub fn project(&self, loc_a: usize, loc_b: usize) -> (f64, ModeProjection) {
        let idx: Vec<usize> = (0..4).map(|k| mode_index(self.paths, k / 2, loc_a, k % 2, loc_b)).collect();
        match &self.repr {
            ModeRepr::Pure(v) => {
                let sub = Vec4::from_fn(|k, _| v[idx[k]]);
                (sub.norm_squared(), ModeProjection::Pure(sub))
            }
            ModeRepr::Mixed(m) => {
                let sub = crate::qstate::Mat4::from_fn(|r, col| m[(idx[r], idx[col])]);
                (sub.trace().re, ModeProjection::Mixed(sub))
            }
        }
    }

    /// Post-selects on the given paths and renormalizes. `None` when the
    /// branch probability is below 1e-14.
    pub fn post_select(&self, loc_a: usize, loc_b: usize) -> (f64, Option<TwoQubitState>) {
        let (p, proj) = self.project(loc_a, loc_b);
        if p < EMPTY_BRANCH {
            return (p, None);
        }
        let state = match proj {
            ModeProjection::Pure(v) => {
                TwoQubitState::Pure(PureState2Q::normalized(v).expect("non-empty branch"))
            }
            ModeProjection::Mixed(m) => {
                let m = m / c(p, 0.0);
                let m = (m + m.adjoint()) * c(0.5, 0.0);
                TwoQubitState::Mixed(DensityMatrix4::from_matrix_unchecked(m))
            }
        };
        (p, Some(state))
    }
}

/// Branches lighter than this are reported empty instead of renormalized.
pub const EMPTY_BRANCH: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub enum ModeProjection {
    Pure(Vec4),
    Mixed(crate::qstate::Mat4),
}

/// Runs `input` through `netlist`.
pub fn simulate_netlist(netlist: &OpticalNetlist, input: &ModeState) -> Result<ModeState> {
    netlist.validate()?;
    if input.paths != netlist.paths || input.dim() != netlist.dim() {
        return Err(Error::DimensionMismatch { expected: netlist.dim(), got: input.dim() });
    }
    let mut repr = input.repr.clone();
    for e in &netlist.elements {
        let u = netlist.element_matrix(e);
        repr = match repr {
            ModeRepr::Pure(v) => ModeRepr::Pure(&u * v),
            ModeRepr::Mixed(m) => ModeRepr::Mixed(&u * m * u.adjoint()),
        };
    }
    Ok(ModeState { paths: netlist.paths, repr })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optics::ElementKind::*;

    #[test]
    fn empty_netlist_is_identity() {
        let n = OpticalNetlist::new(2, 2);
        let u = n.unitary().unwrap();
        assert!(u.approx_eq(&ComplexMat::identity(16), 0.0));
        let s = ModeState::inject(&PureState2Q::phi_plus().into(), [2, 2]);
        let out = simulate_netlist(&n, &s).unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn pbs_sends_vertical_to_path_one() {
        let mut n = OpticalNetlist::new(2, 1);
        n.push(PlacedElement::new(Pbs, Arm::A, 0));
        let vh = PureState2Q::new(Vec4::new(ZERO, ZERO, c(1.0, 0.0), ZERO)).unwrap();
        let out = simulate_netlist(&n, &ModeState::inject(&vh.into(), [2, 1])).unwrap();
        let (p0, _) = out.project(0, 0);
        let (p1, _) = out.project(1, 0);
        assert!(p0.abs() < 1e-15 && (p1 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dimension_and_placement_errors() {
        let n = OpticalNetlist::new(2, 1);
        let s = ModeState::inject(&PureState2Q::phi_plus().into(), [2, 2]);
        assert!(matches!(simulate_netlist(&n, &s), Err(Error::DimensionMismatch { .. })));

        let mut bad = OpticalNetlist::new(2, 1);
        bad.push(PlacedElement::new(Pbs, Arm::B, 0));
        assert!(matches!(bad.validate(), Err(Error::InvalidNetlist(_))));
        let mut bad = OpticalNetlist::new(1, 1);
        bad.push(PlacedElement::new(Hwp { angle: 0.1 }, Arm::A, 1));
        assert!(matches!(bad.validate(), Err(Error::InvalidNetlist(_))));
    }

    #[test]
    fn every_element_is_unitary() {
        let kinds = [
            Hwp { angle: 0.3 },
            Qwp { angle: -1.1 },
            PhaseShifter { phase: 2.0, component: crate::optics::Component::H },
            Pbs,
            LocationNot,
            Identity,
        ];
        for k in kinds {
            for loc in 0..2 {
                let mut n = OpticalNetlist::new(2, 2);
                n.push(PlacedElement::new(k, Arm::B, loc));
                assert!(n.unitary().unwrap().unitarity_defect() < 1e-12);
            }
        }
    }
}
