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

//! Small-dimension complex linear algebra for two polarization qubits.
//!
//! Basis ordering is fixed everywhere: `|H⟩ = |0⟩` before `|V⟩ = |1⟩`, and in
//! two-photon products photon A is the leftmost tensor factor, so the
//! two-qubit basis reads `|HH⟩, |HV⟩, |VH⟩, |VV⟩`.

use std::fmt;

use nalgebra::{DMatrix, Matrix2, Matrix4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Mat2 = Matrix2<C64>;
pub type Mat4 = Matrix4<C64>;
pub type Vec4 = Vector4<C64>;

/// Absolute tolerance for structural checks (Hermiticity, trace, unitarity).
pub const TOL: f64 = 1e-12;
/// Smallest eigenvalue still accepted as "non-negative".
pub const PSD_TOL: f64 = -1e-10;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// One of the two photons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Arm {
    A,
    B,
}

impl fmt::Display for Arm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arm::A => write!(f, "A"),
            Arm::B => write!(f, "B"),
        }
    }
}

/// `σ₀ = I`, `σ₁ = X`, `σ₂ = Y`, `σ₃ = Z`.
pub fn pauli(i: usize) -> Mat2 {
    match i {
        0 => Mat2::identity(),
        1 => Mat2::new(ZERO, ONE, ONE, ZERO),
        2 => Mat2::new(ZERO, -I, I, ZERO),
        3 => Mat2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("pauli index {i} out of range"),
    }
}

pub fn kron2(a: &Mat2, b: &Mat2) -> Mat4 {
    Mat4::from_fn(|r, col| a[(r / 2, col / 2)] * b[(r % 2, col % 2)])
}

/// `σ_i ⊗ σ_j`.
pub fn pauli_pair(i: usize, j: usize) -> Mat4 {
    kron2(&pauli(i), &pauli(j))
}

/// Largest entrywise deviation of `m` from its adjoint.
pub fn hermiticity_defect<const N: usize>(
    m: &nalgebra::SMatrix<C64, N, N>,
) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..N {
        for col in 0..N {
            worst = worst.max((m[(r, col)] - m[(col, r)].conj()).norm());
        }
    }
    worst
}

/// Largest entrywise deviation of `U†U` from the identity.
pub fn unitarity_defect<const N: usize>(u: &nalgebra::SMatrix<C64, N, N>) -> f64 {
    let p = u.adjoint() * u;
    let mut worst = 0.0f64;
    for r in 0..N {
        for col in 0..N {
            let target = if r == col { ONE } else { ZERO };
            worst = worst.max((p[(r, col)] - target).norm());
        }
    }
    worst
}

/// `min_φ ‖A − e^{iφ} B‖_F`, the distance between two operators modulo a
/// global phase.
pub fn phase_invariant_distance<const N: usize>(
    a: &nalgebra::SMatrix<C64, N, N>,
    b: &nalgebra::SMatrix<C64, N, N>,
) -> f64 {
    let overlap = (b.adjoint() * a).trace();
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { ONE };
    (a - b * phase).norm()
}

/// Eigenvalues (ascending) and eigenvectors of a Hermitian 4×4 matrix.
pub fn hermitian_eigen(m: &Mat4) -> (Vector4<f64>, Mat4) {
    let h = (m + m.adjoint()) * c(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = Vector4::from_fn(|i, _| eig.eigenvalues[order[i]]);
    let vecs = Mat4::from_fn(|r, col| eig.eigenvectors[(r, order[col])]);
    (vals, vecs)
}

/// Applies `f` to the spectrum of a Hermitian positive semidefinite 2×2 matrix.
pub(crate) fn hermitian_fn2(m: &Mat2, f: impl Fn(f64) -> f64) -> Mat2 {
    let h = (m + m.adjoint()) * c(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let d = Mat2::from_diagonal(&eig.eigenvalues.map(|x| c(f(x), 0.0)));
    eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

/// Generic dense complex matrix with tolerance-based comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMat(DMatrix<C64>);

impl ComplexMat {
    pub const DEFAULT_TOL: f64 = TOL;

    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(ComplexMat(m))
    }

    pub fn identity(n: usize) -> Self {
        ComplexMat(DMatrix::identity(n, n))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn as_inner(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.0
    }

    /// Entrywise comparison at absolute tolerance `tol`.
    pub fn approx_eq(&self, other: &ComplexMat, tol: f64) -> bool {
        self.0.shape() == other.0.shape()
            && self.0.iter().zip(other.0.iter()).all(|(a, b)| (a - b).norm() <= tol)
    }

    pub fn max_abs_diff(&self, other: &ComplexMat) -> f64 {
        assert_eq!(self.0.shape(), other.0.shape());
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_distance(&self, other: &ComplexMat) -> f64 {
        (&self.0 - &other.0).norm()
    }

    pub fn unitarity_defect(&self) -> f64 {
        let p = self.0.adjoint() * &self.0;
        let n = p.nrows();
        let id = DMatrix::<C64>::identity(n, n);
        (p - id).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn mul(&self, rhs: &ComplexMat) -> ComplexMat {
        ComplexMat(&self.0 * &rhs.0)
    }
}

impl From<Mat2> for ComplexMat {
    fn from(m: Mat2) -> Self {
        ComplexMat(DMatrix::from_fn(2, 2, |r, col| m[(r, col)]))
    }
}

impl From<Mat4> for ComplexMat {
    fn from(m: Mat4) -> Self {
        ComplexMat(DMatrix::from_fn(4, 4, |r, col| m[(r, col)]))
    }
}

/// Normalized pure state of two polarization qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState2Q {
    amps: Vec4,
}

impl PureState2Q {
    /// Accepts `amps` only if its norm is 1 within [`TOL`].
    pub fn new(amps: Vec4) -> Result<Self> {
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let dev = (amps.norm() - 1.0).abs();
        if dev > TOL {
            return Err(Error::NotNormalized(dev));
        }
        Ok(PureState2Q { amps })
    }

    /// Rescales a non-zero vector to unit norm.
    pub fn normalized(amps: Vec4) -> Result<Self> {
        let n = amps.norm();
        if !n.is_finite() {
            return Err(Error::NonFinite);
        }
        if n == 0.0 {
            return Err(Error::NotNormalized(1.0));
        }
        Ok(PureState2Q { amps: amps / c(n, 0.0) })
    }

    /// `cos α |HH⟩ + sin α |VV⟩`.
    pub fn schmidt(alpha: f64) -> Self {
        PureState2Q {
            amps: Vec4::new(c(alpha.cos(), 0.0), ZERO, ZERO, c(alpha.sin(), 0.0)),
        }
    }

    /// `(|HH⟩ + |VV⟩)/√2`.
    pub fn phi_plus() -> Self {
        Self::schmidt(std::f64::consts::FRAC_PI_4)
    }

    pub fn amplitudes(&self) -> &Vec4 {
        &self.amps
    }

    pub fn density(&self) -> DensityMatrix4 {
        DensityMatrix4 { m: self.amps * self.amps.adjoint() }
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &PureState2Q) -> f64 {
        self.amps.dotc(&other.amps).norm_sqr()
    }
}

/// Two-qubit density operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4 {
    m: Mat4,
}

impl DensityMatrix4 {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(m: Mat4) -> Result<Self> {
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let herm = hermiticity_defect(&m);
        if herm > TOL {
            return Err(Error::NonHermitianInput(herm));
        }
        let tr = m.trace();
        let dev = (tr - ONE).norm();
        if dev > TOL {
            return Err(Error::NotNormalized(dev));
        }
        let m = (m + m.adjoint()) * c(0.5, 0.0);
        let (vals, _) = hermitian_eigen(&m);
        if vals[0] < PSD_TOL {
            return Err(Error::NotPositive(vals[0]));
        }
        Ok(DensityMatrix4 { m })
    }

    /// Rescales a Hermitian positive semidefinite matrix to unit trace.
    pub fn normalized(m: Mat4) -> Result<Self> {
        let tr = m.trace().re;
        if !(tr.is_finite() && tr > 0.0) {
            return Err(Error::NotNormalized(1.0));
        }
        Self::new(m / c(tr, 0.0))
    }

    /// No validation; for values produced by trusted internal arithmetic.
    pub(crate) fn from_matrix_unchecked(m: Mat4) -> Self {
        DensityMatrix4 { m }
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix4 { m: Mat4::identity() * c(0.25, 0.0) }
    }

    /// `p |Ψ⁻⟩⟨Ψ⁻| + (1 − p) I/4`.
    pub fn werner(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfRange(format!("werner weight {p} not in [0, 1]")));
        }
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = PureState2Q { amps: Vec4::new(ZERO, c(s, 0.0), c(-s, 0.0), ZERO) };
        let m = psi.density().m * c(p, 0.0) + Mat4::identity() * c((1.0 - p) / 4.0, 0.0);
        Self::new(m)
    }

    /// Mixture of `Φ⁺, Φ⁻, Ψ⁺, Ψ⁻` with the given weights.
    pub fn bell_diagonal(weights: [f64; 4]) -> Result<Self> {
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::OutOfRange("bell-diagonal weights must be non-negative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > TOL {
            return Err(Error::NotNormalized((total - 1.0).abs()));
        }
        let m = bell_states()
            .iter()
            .zip(weights)
            .fold(Mat4::zeros(), |acc, (b, w)| acc + b.density().m * c(w, 0.0));
        Self::new(m)
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.m
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vector4<f64> {
        hermitian_eigen(&self.m).0
    }

    pub fn to_rmatrix(&self) -> RMatrix {
        rmatrix_of(&self.m)
    }

    pub fn partial_trace(&self, keep: Arm) -> Mat2 {
        partial_trace(&self.m, keep)
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn fidelity_pure(&self, psi: &PureState2Q) -> f64 {
        (psi.amps.adjoint() * self.m * psi.amps)[(0, 0)].re
    }

    /// `½‖ρ − σ‖₁`.
    pub fn trace_distance(&self, other: &DensityMatrix4) -> f64 {
        let (vals, _) = hermitian_eigen(&(self.m - other.m));
        0.5 * vals.iter().map(|v| v.abs()).sum::<f64>()
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix4) -> f64 {
        (self.m - other.m).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `(A⊗B) ρ (A⊗B)†` without renormalization, together with its trace.
    pub fn filtered(&self, a: &Mat2, b: &Mat2) -> (Mat4, f64) {
        let k = kron2(a, b);
        let out = k * self.m * k.adjoint();
        let p = out.trace().re;
        (out, p)
    }
}

/// `Φ⁺, Φ⁻, Ψ⁺, Ψ⁻` in that order.
pub fn bell_states() -> [PureState2Q; 4] {
    let s = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [
        PureState2Q { amps: Vec4::new(s, ZERO, ZERO, s) },
        PureState2Q { amps: Vec4::new(s, ZERO, ZERO, -s) },
        PureState2Q { amps: Vec4::new(ZERO, s, s, ZERO) },
        PureState2Q { amps: Vec4::new(ZERO, s, -s, ZERO) },
    ]
}

/// Either kind of two-photon polarization state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TwoQubitState {
    Pure(PureState2Q),
    Mixed(DensityMatrix4),
}

impl TwoQubitState {
    pub fn density(&self) -> DensityMatrix4 {
        match self {
            TwoQubitState::Pure(p) => p.density(),
            TwoQubitState::Mixed(d) => *d,
        }
    }
}

impl From<PureState2Q> for TwoQubitState {
    fn from(p: PureState2Q) -> Self {
        TwoQubitState::Pure(p)
    }
}

impl From<DensityMatrix4> for TwoQubitState {
    fn from(d: DensityMatrix4) -> Self {
        TwoQubitState::Mixed(d)
    }
}

/// Real Pauli-correlation matrix `R_ij = tr(ρ σ_i ⊗ σ_j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RMatrix(pub Matrix4<f64>);

impl RMatrix {
    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// Frobenius norm of everything off the main diagonal.
    pub fn off_diagonal_mass(&self) -> f64 {
        off_diagonal_mass(&self.0)
    }

    pub fn to_density_matrix(&self) -> Mat4 {
        rmatrix_to_density(self)
    }
}

pub(crate) fn off_diagonal_mass(m: &Matrix4<f64>) -> f64 {
    let mut s = 0.0;
    for r in 0..4 {
        for col in 0..4 {
            if r != col {
                s += m[(r, col)] * m[(r, col)];
            }
        }
    }
    s.sqrt()
}

fn rmatrix_of(rho: &Mat4) -> RMatrix {
    RMatrix(Matrix4::from_fn(|i, j| (rho * pauli_pair(i, j)).trace().re))
}

/// Pauli-correlation representation of a Hermitian 4×4 operator.
///
/// The trace is not required to be one, which keeps the map linear.
pub fn density_to_rmatrix(rho: &Mat4) -> Result<RMatrix> {
    let herm = hermiticity_defect(rho);
    if herm > TOL {
        return Err(Error::NonHermitianInput(herm));
    }
    let mut out = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            let v = (rho * pauli_pair(i, j)).trace();
            debug_assert!(v.im.abs() < 1e-10 * (1.0 + rho.norm()));
            out[(i, j)] = v.re;
        }
    }
    Ok(RMatrix(out))
}

/// `ρ = Σ R_ij σ_i ⊗ σ_j / 4`. Hermitian by construction; positivity is
/// left to the caller.
pub fn rmatrix_to_density(r: &RMatrix) -> Mat4 {
    let mut m = Mat4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            m += pauli_pair(i, j) * c(r.0[(i, j)] / 4.0, 0.0);
        }
    }
    m
}

/// Reduced state of photon `keep`.
pub fn partial_trace(rho: &Mat4, keep: Arm) -> Mat2 {
    Mat2::from_fn(|r, col| match keep {
        Arm::A => rho[(2 * r, 2 * col)] + rho[(2 * r + 1, 2 * col + 1)],
        Arm::B => rho[(r, col)] + rho[(2 + r, 2 + col)],
    })
}
