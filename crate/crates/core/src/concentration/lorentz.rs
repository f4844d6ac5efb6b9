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

//! Lorentz normal form of the R matrix under local filtering.
//!
//! A local filter `A ⊗ B` with `det A = det B = 1` acts on the correlation
//! matrix as `R → L(A) R L(B)ᵀ`, where `L(A)_ij = ½ tr(σ_i A σ_j A†)` is a
//! proper orthochronous Lorentz transformation. The normal form makes
//! `L_A R L_Bᵀ` diagonal when possible.
//!
//! Construction:
//!
//! 1. Diagonalizability is decided from `N = η Rᵀ η R`, which is similar to
//!    `Σ²` when a diagonal form exists. A cluster of eigenvalues whose
//!    geometric multiplicity falls short of its algebraic multiplicity is a
//!    Jordan block; so is an eigenvector matrix with condition number above
//!    [`CONDITION_LIMIT`].
//! 2. The transformations themselves come from alternately filtering each
//!    photon with `ρ_X^{-1/2}` (normalized to unit determinant) until both
//!    marginals are maximally mixed. That leaves `R = diag(r₀₀, T)`, and an
//!    SVD of the 3×3 block `T` over SO(3) finishes the job.
//!
//! Step 2 must converge with bounded filters; if it does not, the state is
//! also reported as not diagonalizable.

use nalgebra::{Complex, Matrix3, Matrix4, Vector3, Vector4};

use crate::error::{Error, Result};
use crate::qstate::{
    c, hermitian_eigen, hermitian_fn2, kron2, off_diagonal_mass, partial_trace, pauli, DensityMatrix4, Mat2,
    Mat4, RMatrix, C64,
};

/// Minkowski metric `diag(1, −1, −1, −1)`.
pub fn eta() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0))
}

/// Largest tolerated condition number of an eigenvector matrix or Lorentz
/// factor before a normal form is declared non-diagonal.
pub const CONDITION_LIMIT: f64 = 1e8;

/// Relative tolerance for clustering eigenvalues of `N` and for its rank test.
pub const CLUSTER_TOL: f64 = 1e-6;

/// Marginal-balancing stops once both reduced states are this close to `I/2`
/// (Frobenius norm).
pub const BALANCE_TOL: f64 = 1e-13;
pub const MAX_BALANCE_ITERS: usize = 20_000;

#[derive(Debug, Clone, PartialEq)]
pub struct LorentzNormalForm {
    pub l_a: Matrix4<f64>,
    pub l_b: Matrix4<f64>,
    /// Diagonal of `L_A R L_Bᵀ`: `s₀ ≥ s₁ ≥ s₂ ≥ |s₃|`, with any sign in `s₃`.
    pub sigma: Vector4<f64>,
    pub diagonalizable: bool,
    /// Condition number of the eigenvector matrix of `N` (infinite when a
    /// Jordan block was detected).
    pub eigen_condition: f64,
    /// Eigenvalues of `N`, ascending by real part.
    pub n_eigenvalues: [C64; 4],
    /// Frobenius mass off the diagonal of `L_A R L_Bᵀ`.
    pub residual: f64,
    pub iterations: usize,
}

impl LorentzNormalForm {
    /// `sigma / s₀`.
    pub fn normalized_sigma(&self) -> Vector4<f64> {
        if self.sigma[0] > 0.0 {
            self.sigma / self.sigma[0]
        } else {
            self.sigma
        }
    }
}

/// `L(A)_ij = ½ tr(σ_i A σ_j A†)`.
pub fn lorentz_of_filter(a: &Mat2) -> Matrix4<f64> {
    let sig: [Mat2; 4] = [pauli(0), pauli(1), pauli(2), pauli(3)];
    Matrix4::from_fn(|i, j| 0.5 * (sig[i] * a * sig[j] * a.adjoint()).trace().re)
}

/// Inverse of the double cover: a 2×2 filter `A` with `L(A) ∝ L`.
///
/// The map `X ↦ Σ L_ij σ_i tr(σ_j X)/2` equals `X ↦ A X A†`; its Choi matrix
/// is `vec(A) vec(A)†`, so the top eigenvector recovers `A` up to a phase.
/// The result is scaled to largest singular value one.
pub fn filter_of_lorentz(l: &Matrix4<f64>) -> Mat2 {
    let sig: [Mat2; 4] = [pauli(0), pauli(1), pauli(2), pauli(3)];
    let channel = |x: &Mat2| -> Mat2 {
        let mut out = Mat2::zeros();
        for i in 0..4 {
            for j in 0..4 {
                if l[(i, j)] != 0.0 {
                    out += sig[i] * ((sig[j] * x).trace() * c(0.5 * l[(i, j)], 0.0));
                }
            }
        }
        out
    };
    let mut choi = Mat4::zeros();
    for a in 0..2 {
        for b in 0..2 {
            let mut e = Mat2::zeros();
            e[(a, b)] = c(1.0, 0.0);
            choi += kron2(&e, &channel(&e));
        }
    }
    let (vals, vecs) = hermitian_eigen(&choi);
    let top = vecs.column(3) * c(vals[3].max(0.0).sqrt(), 0.0);
    // Choi vector component (a, b) is A[b][a]
    let a = Mat2::from_fn(|r, col| top[2 * col + r]);
    // fix the arbitrary phase on the largest entry so results are reproducible
    let (mut best, mut mag) = (c(1.0, 0.0), -1.0);
    for z in a.iter() {
        if z.norm() > mag + 1e-12 {
            mag = z.norm();
            best = *z;
        }
    }
    let a = if mag > 0.0 { a * (best.conj() / c(mag, 0.0)) } else { a };
    let smax = a.svd(false, false).singular_values.max();
    if smax > 0.0 {
        a / c(smax, 0.0)
    } else {
        a
    }
}

/// Checks `L η Lᵀ = η`, `det L = 1`, `L₀₀ ≥ 1`; returns the largest defect.
pub fn polt_defect(l: &Matrix4<f64>) -> f64 {
    let e = eta();
    let metric = (l * e * l.transpose() - e).abs().max();
    let det = (l.determinant() - 1.0).abs();
    let ortho = (1.0 - l[(0, 0)]).max(0.0);
    metric.max(det).max(ortho)
}

/// Result of the eigen-analysis of `N = η Rᵀ η R`.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanTest {
    pub eigenvalues: [C64; 4],
    pub defective: bool,
    pub condition: f64,
}

pub fn jordan_test(r: &Matrix4<f64>) -> JordanTest {
    let e = eta();
    let n = e * r.transpose() * e * r;
    let scale = n.abs().max().max(1e-300);
    let tol = CLUSTER_TOL * scale;
    let raw = n.complex_eigenvalues();
    let mut eig: Vec<C64> = raw.iter().map(|z: &Complex<f64>| c(z.re, z.im)).collect();
    eig.sort_by(|a, b| a.re.total_cmp(&b.re));
    let eigenvalues = [eig[0], eig[1], eig[2], eig[3]];

    // group consecutive eigenvalues within tolerance
    let mut clusters: Vec<Vec<C64>> = Vec::new();
    for z in eig {
        match clusters.last_mut() {
            Some(cl) if (cl[cl.len() - 1] - z).norm() <= tol => cl.push(z),
            _ => clusters.push(vec![z]),
        }
    }

    let mut basis: Vec<Vector4<f64>> = Vec::new();
    let mut defective = false;
    for cl in &clusters {
        let mean = cl.iter().fold(c(0.0, 0.0), |a, z| a + z) / c(cl.len() as f64, 0.0);
        if mean.im.abs() > tol {
            defective = true;
            continue;
        }
        let shifted = n - Matrix4::identity() * mean.re;
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.expect("requested");
        let mut order: Vec<usize> = (0..4).collect();
        order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
        let null_dim = order.iter().filter(|&&k| svd.singular_values[k] <= tol).count();
        if null_dim < cl.len() {
            defective = true;
        }
        for &k in order.iter().take(cl.len()) {
            basis.push(v_t.row(k).transpose());
        }
    }

    let condition = if defective || basis.len() != 4 {
        f64::INFINITY
    } else {
        let m = Matrix4::from_columns(&basis);
        let s = m.svd(false, false).singular_values;
        let smin = s.min();
        if smin > 0.0 {
            s.max() / smin
        } else {
            f64::INFINITY
        }
    };
    JordanTest { eigenvalues, defective: defective || condition > CONDITION_LIMIT, condition }
}

fn unit_det(a: &Mat2) -> Option<Mat2> {
    let d = a.determinant();
    if d.norm() < 1e-300 || !d.norm().is_finite() {
        return None;
    }
    Some(a / d.sqrt())
}

fn condition2(a: &Mat2) -> f64 {
    let s = a.svd(false, false).singular_values;
    s.max() / s.min()
}

/// Outcome of the marginal balancing loop.
#[derive(Debug, Clone)]
pub(crate) struct Balance {
    pub filter_a: Mat2,
    pub filter_b: Mat2,
    pub iterations: usize,
    pub converged: bool,
}

/// Alternately filters each photon with `ρ_X^{-1/2}`, keeping
/// `det = 1`, for at most `max_iters` rounds.
pub(crate) fn balance_marginals(rho: &Mat4, max_iters: usize, stop_on_convergence: bool) -> Option<Balance> {
    let half = Mat2::identity() * c(0.5, 0.0);
    let mut fa = Mat2::identity();
    let mut fb = Mat2::identity();
    let mut state = *rho / rho.trace();
    let inv_sqrt = |m: &Mat2| -> Option<Mat2> {
        let h = (m + m.adjoint()) * c(0.5, 0.0);
        let ev = h.symmetric_eigen().eigenvalues;
        if ev.min() <= 1e-14 * ev.max().max(1e-300) {
            return None;
        }
        unit_det(&hermitian_fn2(&h, |x| 1.0 / x.sqrt()))
    };
    for it in 0..max_iters {
        let ra = partial_trace(&state, crate::qstate::Arm::A);
        let rb = partial_trace(&state, crate::qstate::Arm::B);
        let res = (ra - half).norm().max((rb - half).norm());
        if stop_on_convergence && res < BALANCE_TOL {
            return Some(Balance { filter_a: fa, filter_b: fb, iterations: it, converged: true });
        }
        if condition2(&fa).powi(2) > CONDITION_LIMIT || condition2(&fb).powi(2) > CONDITION_LIMIT {
            return Some(Balance { filter_a: fa, filter_b: fb, iterations: it, converged: false });
        }
        let a = inv_sqrt(&ra)?;
        let k = kron2(&a, &Mat2::identity());
        state = k * state * k.adjoint();
        state /= state.trace();
        fa = a * fa;

        let rb = partial_trace(&state, crate::qstate::Arm::B);
        let b = inv_sqrt(&rb)?;
        let k = kron2(&Mat2::identity(), &b);
        state = k * state * k.adjoint();
        state /= state.trace();
        fb = b * fb;
    }
    Some(Balance { filter_a: fa, filter_b: fb, iterations: max_iters, converged: false })
}

fn sorted_svd3(t: &Matrix3<f64>) -> (Matrix3<f64>, Vector3<f64>, Matrix3<f64>) {
    let svd = t.svd(true, true);
    let u = svd.u.expect("requested");
    let v = svd.v_t.expect("requested").transpose();
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let mut p = Matrix3::from_columns(&[u.column(order[0]), u.column(order[1]), u.column(order[2])]);
    let mut q = Matrix3::from_columns(&[v.column(order[0]), v.column(order[1]), v.column(order[2])]);
    let mut d = Vector3::new(
        svd.singular_values[order[0]],
        svd.singular_values[order[1]],
        svd.singular_values[order[2]],
    );
    if p.determinant() < 0.0 {
        p.column_mut(2).neg_mut();
        d[2] = -d[2];
    }
    if q.determinant() < 0.0 {
        q.column_mut(2).neg_mut();
        d[2] = -d[2];
    }
    (p, d, q)
}

fn embed_rotation(o: &Matrix3<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::identity();
    m.fixed_view_mut::<3, 3>(1, 1).copy_from(o);
    m
}

/// Lorentz normal form of `r`.
///
/// `r` must come from a valid density matrix; a quick positivity round trip
/// guards against arbitrary real input.
pub fn lorentz_normal_form(r: &RMatrix) -> Result<LorentzNormalForm> {
    let rho = r.to_density_matrix();
    DensityMatrix4::normalized(rho).map_err(|e| Error::NotAState(e.to_string()))?;
    let rm = *r.matrix();
    let jt = jordan_test(&rm);

    let mut out = LorentzNormalForm {
        l_a: Matrix4::identity(),
        l_b: Matrix4::identity(),
        sigma: rm.diagonal(),
        diagonalizable: false,
        eigen_condition: jt.condition,
        n_eigenvalues: jt.eigenvalues,
        residual: off_diagonal_mass(&rm),
        iterations: 0,
    };

    // already diagonal: fixed point, no reordering
    if out.residual < 1e-12 {
        out.diagonalizable = true;
        return Ok(out);
    }
    if jt.defective {
        return Ok(out);
    }

    let Some(bal) = balance_marginals(&rho, MAX_BALANCE_ITERS, true) else {
        return Ok(out);
    };
    out.iterations = bal.iterations;
    if !bal.converged {
        return Ok(out);
    }

    let la0 = lorentz_of_filter(&bal.filter_a);
    let lb0 = lorentz_of_filter(&bal.filter_b);
    let balanced = la0 * rm * lb0.transpose();
    let t: Matrix3<f64> = balanced.fixed_view::<3, 3>(1, 1).into_owned();
    let (p, d, q) = sorted_svd3(&t);
    let l_a = embed_rotation(&p.transpose()) * la0;
    let l_b = embed_rotation(&q.transpose()) * lb0;
    let diag = l_a * rm * l_b.transpose();

    out.l_a = l_a;
    out.l_b = l_b;
    out.sigma = Vector4::new(diag[(0, 0)], d[0], d[1], d[2]);
    out.residual = off_diagonal_mass(&diag);
    out.diagonalizable = true;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::PureState2Q;
    use crate::random::{random_density, random_unitary2, rng_from_seed};

    #[test]
    fn double_cover_is_lorentz() {
        let mut rng = rng_from_seed(3);
        for _ in 0..20 {
            let g = crate::random::ginibre2(&mut rng);
            let a = unit_det(&g).unwrap();
            let l = lorentz_of_filter(&a);
            assert!(polt_defect(&l) < 1e-10);
        }
    }

    #[test]
    fn unitaries_map_to_rotations() {
        let mut rng = rng_from_seed(4);
        let u = random_unitary2(&mut rng);
        let l = lorentz_of_filter(&u);
        assert!((l[(0, 0)] - 1.0).abs() < 1e-14);
        let o: Matrix3<f64> = l.fixed_view::<3, 3>(1, 1).into_owned();
        assert!((o * o.transpose() - Matrix3::identity()).norm() < 1e-13);
    }

    #[test]
    fn inverse_double_cover_round_trip() {
        let mut rng = rng_from_seed(5);
        for _ in 0..20 {
            let a = unit_det(&crate::random::ginibre2(&mut rng)).unwrap();
            let l = lorentz_of_filter(&a);
            let back = filter_of_lorentz(&l);
            let lb = lorentz_of_filter(&back);
            // back has unit largest singular value, so L(back) = L / (s_max(a))²
            let scale = a.svd(false, false).singular_values.max().powi(2);
            assert!((lb * scale - l).norm() < 1e-8 * l.norm());
        }
    }

    #[test]
    fn bell_diagonal_is_fixed_point() {
        let rho = DensityMatrix4::bell_diagonal([0.5, 0.2, 0.2, 0.1]).unwrap();
        let nf = lorentz_normal_form(&rho.to_rmatrix()).unwrap();
        assert!(nf.diagonalizable);
        assert_eq!(nf.l_a, Matrix4::identity());
        assert_eq!(nf.l_b, Matrix4::identity());
        assert!((nf.sigma - rho.to_rmatrix().0.diagonal()).norm() < 1e-15);
    }

    #[test]
    fn pure_state_normal_form_is_bell() {
        let psi = PureState2Q::schmidt(0.3);
        let nf = lorentz_normal_form(&psi.density().to_rmatrix()).unwrap();
        assert!(nf.diagonalizable);
        let s = nf.normalized_sigma();
        assert!((s.abs() - Vector4::new(1.0, 1.0, 1.0, 1.0)).norm() < 1e-10, "{s}");
        assert!(s[3] < 0.0);
    }

    #[test]
    fn random_states_diagonalize() {
        let mut rng = rng_from_seed(6);
        for _ in 0..50 {
            let rho = random_density(&mut rng);
            let nf = lorentz_normal_form(&rho.to_rmatrix()).unwrap();
            assert!(nf.diagonalizable);
            assert!(nf.residual < 1e-8, "residual {}", nf.residual);
            assert!(polt_defect(&nf.l_a) < 1e-10 && polt_defect(&nf.l_b) < 1e-10);
            let s = nf.sigma;
            assert!(s[0] >= s[1] && s[1] >= s[2] && s[2] >= s[3].abs());
        }
    }

    #[test]
    fn singlet_plus_product_is_not_diagonalizable() {
        let psi = crate::qstate::bell_states()[3].density();
        let mut m = *psi.matrix() * c(0.5, 0.0);
        m[(0, 0)] += c(0.5, 0.0);
        let rho = DensityMatrix4::new(m).unwrap();
        let nf = lorentz_normal_form(&rho.to_rmatrix()).unwrap();
        assert!(!nf.diagonalizable);
        assert!(nf.eigen_condition.is_infinite() || nf.eigen_condition > CONDITION_LIMIT);
    }

    #[test]
    fn rejects_unphysical_r() {
        let mut r = Matrix4::zeros();
        r[(0, 0)] = 1.0;
        r[(3, 3)] = 3.0;
        assert!(matches!(lorentz_normal_form(&RMatrix(r)), Err(Error::NotAState(_))));
    }
}
