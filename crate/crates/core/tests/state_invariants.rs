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

use nalgebra::Matrix4;
use num_complex::Complex64 as C;
use proptest::prelude::*;
use rand::Rng;

use pairconc::measures::{concurrence, eof_from_concurrence};
use pairconc::qstate::{density_to_rmatrix, kron2, rmatrix_to_density, DensityMatrix4, Mat2, Mat4};
use pairconc::random::{random_density, random_density_rank, random_unitary2, rng_from_seed, task_rng};

fn max_abs(m: &Mat4) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn random_qubit_state(seed: u64) -> Mat2 {
    let mut rng = rng_from_seed(seed);
    let g = pairconc::random::ginibre2(&mut rng);
    let m = g * g.adjoint();
    m / m.trace()
}

#[test]
fn density_and_correlations_round_trip() {
    for i in 0..1000u64 {
        let mut rng = task_rng(100, i);
        let rho = random_density_rank(&mut rng, 1 + (i as usize % 4));
        let back = rmatrix_to_density(&density_to_rmatrix(rho.matrix()).unwrap());
        assert!(max_abs(&(back - rho.matrix())) < 1e-12, "sample {i}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn correlation_map_is_linear(s1 in any::<u64>(), s2 in any::<u64>(), a in -3.0..3.0f64, b in -3.0..3.0f64) {
        let r1 = random_density(&mut rng_from_seed(s1));
        let r2 = random_density(&mut rng_from_seed(s2));
        let mix: Mat4 = r1.matrix() * C::new(a, 0.0) + r2.matrix() * C::new(b, 0.0);
        let lhs = density_to_rmatrix(&mix).unwrap().0;
        let rhs = density_to_rmatrix(r1.matrix()).unwrap().0 * a + density_to_rmatrix(r2.matrix()).unwrap().0 * b;
        prop_assert!((lhs - rhs).abs().max() < 1e-12);
    }

    #[test]
    fn product_states_have_rank_one_correlations(sa in any::<u64>(), sb in any::<u64>()) {
        let (a, b) = (random_qubit_state(sa), random_qubit_state(sb));
        let rho = DensityMatrix4::new(kron2(&a, &b)).unwrap();
        let r = rho.to_rmatrix().0;
        // R_ij = r_i s_j with r_0 = s_0 = 1
        let outer = Matrix4::from_fn(|i, j| r[(i, 0)] * r[(0, j)]);
        prop_assert!((r - outer).abs().max() < 1e-10);
    }

    #[test]
    fn concurrence_ignores_local_unitaries(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let rank = rng.random_range(1..=4);
        let rho = random_density_rank(&mut rng, rank);
        let u = kron2(&random_unitary2(&mut rng), &random_unitary2(&mut rng));
        let rotated = DensityMatrix4::normalized(u * rho.matrix() * u.adjoint()).unwrap();
        prop_assert!((concurrence(&rho) - concurrence(&rotated)).abs() < 1e-10);
    }
}

#[test]
fn eof_is_monotone_in_concurrence() {
    let grid: Vec<f64> = (0..=2000).map(|k| k as f64 / 2000.0).collect();
    for w in grid.windows(2) {
        assert!(eof_from_concurrence(w[1]) >= eof_from_concurrence(w[0]));
    }
}

#[test]
fn invalid_matrices_are_rejected() {
    let mut m = Mat4::identity() * C::new(0.25, 0.0);
    m[(0, 1)] = C::new(0.1, 0.0);
    assert!(DensityMatrix4::new(m).is_err());
    let neg = Mat4::from_diagonal(&nalgebra::Vector4::new(0.6, 0.6, 0.1, -0.3).map(|x| C::new(x, 0.0)));
    assert!(DensityMatrix4::new(neg).is_err());
}
