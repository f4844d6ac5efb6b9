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

//! Simulated polarization tomography of the post-selected pair.
//!
//! Each photon is analyzed by a rotation followed by a polarizing beam
//! splitter with a detector on each output path: path 0 (transmitted `H`)
//! counts the `+` eigenstate of the chosen Pauli operator, path 1 the `−` one.
//! Nine setting pairs give every correlator `⟨σ_i ⊗ σ_j⟩`; the state is
//! rebuilt by linear inversion and, if sampling noise breaks positivity,
//! clipped to the nearest positive unit-trace matrix.

use std::f64::consts::FRAC_1_SQRT_2;

use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optics::{synthesize_spr, ElementKind};
use crate::povm::{simulate_netlist, ModeState, OpticalNetlist, PlacedElement};
use crate::qstate::{c, hermitian_eigen, rmatrix_to_density, Arm, DensityMatrix4, Mat2, Mat4, RMatrix, TwoQubitState};
use crate::random::task_rng;

/// Analysis basis for one photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PauliBasis {
    /// `H/V`, eigenbasis of Z.
    #[serde(rename = "HV")]
    Z,
    /// `D/A`, eigenbasis of X.
    #[serde(rename = "DA")]
    X,
    /// `R/L`, eigenbasis of Y.
    #[serde(rename = "RL")]
    Y,
}

impl PauliBasis {
    pub const ALL: [PauliBasis; 3] = [PauliBasis::Z, PauliBasis::X, PauliBasis::Y];

    pub fn pauli_index(self) -> usize {
        match self {
            PauliBasis::X => 1,
            PauliBasis::Y => 2,
            PauliBasis::Z => 3,
        }
    }

    /// Rotation taking `|+⟩` to `|H⟩` and `|−⟩` to `|V⟩`; its rows are the
    /// conjugated eigenvectors.
    pub fn analyzer_rotation(self) -> Mat2 {
        let s = c(FRAC_1_SQRT_2, 0.0);
        let i = c(0.0, FRAC_1_SQRT_2);
        match self {
            PauliBasis::Z => Mat2::identity(),
            PauliBasis::X => Mat2::new(s, s, s, -s),
            PauliBasis::Y => Mat2::new(s, -i, s, i),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MeasurementSetting {
    pub basis_a: PauliBasis,
    pub basis_b: PauliBasis,
}

impl MeasurementSetting {
    /// All nine basis pairs, A-major.
    pub fn all() -> Vec<MeasurementSetting> {
        PauliBasis::ALL
            .iter()
            .flat_map(|&a| PauliBasis::ALL.iter().map(move |&b| MeasurementSetting { basis_a: a, basis_b: b }))
            .collect()
    }

    /// Analyzer rotations followed by a beam splitter on each photon.
    pub fn netlist(&self) -> OpticalNetlist {
        let mut n = OpticalNetlist::new(2, 2);
        for (arm, basis) in [(Arm::A, self.basis_a), (Arm::B, self.basis_b)] {
            let seq = synthesize_spr(&basis.analyzer_rotation()).expect("unitary");
            n.extend(seq.exact_elements().into_iter().map(|e| PlacedElement::new(e, arm, 0)));
            n.push(PlacedElement::new(ElementKind::Pbs, arm, 0));
        }
        n
    }

    /// Probabilities of `(+,+), (+,−), (−,+), (−,−)` from the optical analyzer.
    pub fn outcome_probabilities(&self, rho: &DensityMatrix4) -> [f64; 4] {
        let net = self.netlist();
        let out = simulate_netlist(&net, &ModeState::inject(&TwoQubitState::Mixed(*rho), net.paths))
            .expect("analyzer netlist is well formed");
        let mut p = [0.0; 4];
        for (k, slot) in p.iter_mut().enumerate() {
            *slot = out.project(k / 2, k % 2).0.max(0.0);
        }
        p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum CountMode {
    /// Expected counts `shots × p`; `shots = 0` stores the probabilities.
    Exact,
    /// Multinomial draws from a stream seeded by `(seed, setting index)`.
    Sampled { seed: u64 },
}

/// Coincidence counts for one setting, outcomes ordered `++, +−, −+, −−`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountRecord {
    pub setting: MeasurementSetting,
    pub counts: [f64; 4],
    pub total: f64,
    #[serde(flatten)]
    pub mode: CountMode,
}

pub fn simulate_counts(
    rho: &DensityMatrix4,
    settings: &[MeasurementSetting],
    shots: u64,
    mode: CountMode,
) -> Result<Vec<CountRecord>> {
    if matches!(mode, CountMode::Sampled { .. }) && shots == 0 {
        return Err(Error::InvalidShots("sampled mode needs at least one shot".into()));
    }
    settings
        .iter()
        .enumerate()
        .map(|(idx, setting)| {
            let probs = setting.outcome_probabilities(rho);
            let counts = match mode {
                CountMode::Exact => {
                    let scale = if shots == 0 { 1.0 } else { shots as f64 };
                    probs.map(|p| p * scale)
                }
                CountMode::Sampled { seed } => multinomial(&probs, shots, seed, idx as u64)?,
            };
            let total = match mode {
                CountMode::Exact if shots == 0 => counts.iter().sum(),
                _ => shots as f64,
            };
            Ok(CountRecord { setting: *setting, counts, total, mode })
        })
        .collect()
}

fn multinomial(probs: &[f64; 4], shots: u64, seed: u64, stream: u64) -> Result<[f64; 4]> {
    let mut rng = task_rng(seed, stream);
    let mut left = shots;
    let mut mass = 1.0;
    let mut out = [0.0; 4];
    for k in 0..4 {
        if k == 3 || left == 0 {
            out[k] = left as f64;
            left = 0;
            continue;
        }
        let q = if mass > 0.0 { (probs[k] / mass).clamp(0.0, 1.0) } else { 0.0 };
        let n = Binomial::new(left, q).map_err(|e| Error::InvalidShots(e.to_string()))?.sample(&mut rng);
        out[k] = n as f64;
        left -= n;
        mass -= probs[k];
    }
    Ok(out)
}

/// Linear inversion from the nine setting pairs.
pub fn reconstruct(records: &[CountRecord]) -> Result<DensityMatrix4> {
    // accumulate per-setting frequencies, merging repeated settings
    let mut freq = std::collections::BTreeMap::<MeasurementSetting, ([f64; 4], f64)>::new();
    for r in records {
        if !(r.total.is_finite() && r.total > 0.0) || r.counts.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(Error::InvalidShots(format!("record for {:?} has no usable counts", r.setting)));
        }
        let e = freq.entry(r.setting).or_insert(([0.0; 4], 0.0));
        for k in 0..4 {
            e.0[k] += r.counts[k];
        }
        e.1 += r.total;
    }
    let missing: Vec<_> = MeasurementSetting::all().into_iter().filter(|s| !freq.contains_key(s)).collect();
    if !missing.is_empty() {
        return Err(Error::IncompleteSettings(format!("{} of 9 setting pairs missing: {missing:?}", missing.len())));
    }

    let sign = [1.0, 1.0, -1.0, -1.0];
    let sign_b = [1.0, -1.0, 1.0, -1.0];
    let mut r = nalgebra::Matrix4::<f64>::zeros();
    r[(0, 0)] = 1.0;
    for (s, (counts, total)) in &freq {
        let f = counts.map(|x| x / total);
        let (i, j) = (s.basis_a.pauli_index(), s.basis_b.pauli_index());
        r[(i, j)] = (0..4).map(|k| sign[k] * sign_b[k] * f[k]).sum();
        // each single-photon expectation is seen by three settings
        r[(i, 0)] += (0..4).map(|k| sign[k] * f[k]).sum::<f64>() / 3.0;
        r[(0, j)] += (0..4).map(|k| sign_b[k] * f[k]).sum::<f64>() / 3.0;
    }
    let rho = rmatrix_to_density(&RMatrix(r));
    project_to_state(&rho)
}

/// Clips negative eigenvalues to zero and renormalizes; untouched if already
/// positive.
pub fn project_to_state(m: &Mat4) -> Result<DensityMatrix4> {
    let (vals, vecs) = hermitian_eigen(m);
    if vals[0] >= 0.0 {
        return DensityMatrix4::normalized(*m);
    }
    let clipped = vals.map(|v| v.max(0.0));
    let total: f64 = clipped.sum();
    if total <= 0.0 {
        return Err(Error::NotPositive(vals[0]));
    }
    let d = Mat4::from_diagonal(&clipped.map(|v| c(v / total, 0.0)));
    DensityMatrix4::new(vecs * d * vecs.adjoint())
}
