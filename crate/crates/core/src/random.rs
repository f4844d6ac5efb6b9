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

//! Seeded random states, unitaries and filters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::qstate::{c, DensityMatrix4, Mat2, Mat4, PureState2Q, Vec4, C64};

pub type TaskRng = ChaCha8Rng;

/// Independent stream for task `index` under `master` seed.
pub fn task_rng(master: u64, index: u64) -> TaskRng {
    ChaCha8Rng::seed_from_u64(splitmix64(master ^ splitmix64(index.wrapping_add(0x9E37_79B9_7F4A_7C15))))
}

pub fn rng_from_seed(seed: u64) -> TaskRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn ginibre4<R: Rng + ?Sized>(rng: &mut R) -> Mat4 {
    Mat4::from_fn(|_, _| gaussian_c64(rng))
}

pub fn ginibre2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    Mat2::from_fn(|_, _| gaussian_c64(rng))
}

/// Full-rank density matrix `GG†/tr(GG†)` with Gaussian `G`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix4 {
    let g = ginibre4(rng);
    DensityMatrix4::normalized(g * g.adjoint()).expect("Ginibre product is positive")
}

/// Density matrix of rank `rank` (1..=4).
pub fn random_density_rank<R: Rng + ?Sized>(rng: &mut R, rank: usize) -> DensityMatrix4 {
    assert!((1..=4).contains(&rank));
    let g = ginibre4(rng);
    let mut m = Mat4::zeros();
    for k in 0..rank {
        let col = g.column(k);
        m += col * col.adjoint();
    }
    DensityMatrix4::normalized(m).expect("positive")
}

pub fn random_pure<R: Rng + ?Sized>(rng: &mut R) -> PureState2Q {
    PureState2Q::normalized(Vec4::from_fn(|_, _| gaussian_c64(rng))).expect("non-zero")
}

/// Haar-random 2×2 unitary.
pub fn random_unitary2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let q = [
        rng.sample::<f64, _>(StandardNormal),
        rng.sample::<f64, _>(StandardNormal),
        rng.sample::<f64, _>(StandardNormal),
        rng.sample::<f64, _>(StandardNormal),
    ];
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let (w, x, y, z) = (q[0] / n, q[1] / n, q[2] / n, q[3] / n);
    let su2 = Mat2::new(c(w, -z), c(-y, -x), c(y, -x), c(w, z));
    let phase = C64::from_polar(1.0, rng.random_range(-std::f64::consts::PI..std::f64::consts::PI));
    su2 * phase
}

/// Random local filter with largest singular value exactly one.
pub fn random_filter<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let g = ginibre2(rng);
    let s = g.svd(false, false).singular_values.max();
    g / c(s, 0.0)
}
