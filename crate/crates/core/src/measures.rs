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

//! Two-qubit entanglement measures.

use crate::qstate::{c, hermitian_eigen, pauli_pair, DensityMatrix4, Mat4};

/// Wootters concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)`, with `λᵢ` the decreasing
/// square roots of the eigenvalues of `ρ ρ̃`, `ρ̃ = (Y⊗Y) ρ* (Y⊗Y)`.
///
/// With `ρ = W W†` the `λᵢ` are the singular values of `Wᵀ (Y⊗Y) W`, which
/// avoids taking square roots of tiny eigenvalues twice. Eigenvalues of `ρ`
/// below [`RANK_CUTOFF`] (relative to the trace) are treated as zero.
pub fn concurrence(rho: &DensityMatrix4) -> f64 {
    concurrence_of(rho.matrix())
}

/// Relative eigenvalue cutoff used when factoring `ρ = W W†`.
pub const RANK_CUTOFF: f64 = 1e-14;

pub(crate) fn concurrence_of(m: &Mat4) -> f64 {
    let tr = m.trace().re;
    if tr <= 0.0 {
        return 0.0;
    }
    let (vals, vecs) = hermitian_eigen(m);
    let w = Mat4::from_fn(|r, col| {
        let v = vals[col] / tr;
        let s = if v > RANK_CUTOFF { v.sqrt() } else { 0.0 };
        vecs[(r, col)] * c(s, 0.0)
    });
    let tau = w.transpose() * pauli_pair(2, 2) * w;
    let mut lam: Vec<f64> = tau.svd(false, false).singular_values.iter().copied().collect();
    lam.sort_by(|a, b| b.total_cmp(a));
    (lam[0] - lam[1] - lam[2] - lam[3]).clamp(0.0, 1.0)
}

/// Binary entropy in bits.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// Entanglement of formation from a concurrence value.
pub fn eof_from_concurrence(conc: f64) -> f64 {
    let conc = conc.clamp(0.0, 1.0);
    binary_entropy(0.5 * (1.0 + (1.0 - conc * conc).max(0.0).sqrt()))
}

pub fn entanglement_of_formation(rho: &DensityMatrix4) -> f64 {
    eof_from_concurrence(concurrence(rho))
}

/// Concurrence and entanglement of formation together.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Entanglement {
    pub concurrence: f64,
    pub eof: f64,
}

impl Entanglement {
    pub fn of(rho: &DensityMatrix4) -> Self {
        let conc = concurrence(rho);
        Entanglement { concurrence: conc, eof: eof_from_concurrence(conc) }
    }
}
