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

//! Monte Carlo searches over random local filters, used to spot-check that
//! the protocols' filters are not beaten.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::exec::Execution;
use crate::measures::eof_from_concurrence;
use crate::qstate::{c, DensityMatrix4, Mat2, PureState2Q, ZERO};
use crate::random::{ginibre2, random_filter, task_rng};

use super::PureConcentrationSpec;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PureSearchReport {
    pub samples: usize,
    /// Samples whose output reached fidelity `≥ 1 − fidelity_slack`.
    pub qualifying: usize,
    /// Largest `p − P_opt` among qualifying samples (−∞ if none).
    pub max_excess: f64,
}

/// Random single-arm filters on photon A. Half are unstructured, half are
/// perturbations of the optimal diagonal filter so that some reach the target.
pub fn pure_optimality_search(
    spec: &PureConcentrationSpec,
    samples: usize,
    fidelity_slack: f64,
    seed: u64,
    exec: Execution,
) -> PureSearchReport {
    let source = spec.source();
    let target = spec.target();
    let p_opt = spec.success_probability();
    let cos_omega = spec.omega().cos();
    let results = exec.map_range(samples, |i| {
        let mut rng = task_rng(seed, i as u64);
        let f = if i % 2 == 0 {
            random_filter(&mut rng)
        } else {
            let jitter: f64 = rng.sample(StandardNormal);
            let d = Mat2::new(c(cos_omega * (1.0 + 1e-4 * jitter), 0.0), ZERO, ZERO, c(1.0, 0.0));
            let g = ginibre2(&mut rng) * c(1e-5 * rng.random::<f64>(), 0.0);
            let f = d * (Mat2::identity() + g) * c(rng.random_range(0.8..=1.0), 0.0);
            let smax = f.svd(false, false).singular_values.max();
            if smax > 1.0 {
                f / c(smax, 0.0)
            } else {
                f
            }
        };
        let v = crate::qstate::kron2(&f, &Mat2::identity()) * source.amplitudes();
        let p = v.norm_squared();
        if p < 1e-14 {
            return (p, 0.0);
        }
        let fid = PureState2Q::normalized(v).expect("non-empty").fidelity(&target);
        (p, fid)
    });
    let mut report = PureSearchReport { samples, qualifying: 0, max_excess: f64::NEG_INFINITY };
    for (p, fid) in results {
        if fid >= 1.0 - fidelity_slack {
            report.qualifying += 1;
            report.max_excess = report.max_excess.max(p - p_opt);
        }
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MixedSearchReport {
    pub samples: usize,
    /// Samples with success probability at least the reference's.
    pub comparable: usize,
    /// Largest `EoF − reference_eof` among comparable samples (−∞ if none).
    pub max_eof_excess: f64,
}

/// Random two-arm filters with unit largest singular value.
pub fn mixed_filter_search(
    rho: &DensityMatrix4,
    reference_probability: f64,
    reference_eof: f64,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> MixedSearchReport {
    let results = exec.map_range(samples, |i| {
        let mut rng = task_rng(seed, i as u64);
        let a = random_filter(&mut rng);
        let b = random_filter(&mut rng);
        let (m, p) = rho.filtered(&a, &b);
        // only samples at least as likely as the reference are compared
        if p < reference_probability || p < 1e-14 {
            return (p, 0.0);
        }
        let conc = crate::measures::concurrence_of(&(m / c(p, 0.0)));
        (p, eof_from_concurrence(conc))
    });
    let mut report = MixedSearchReport { samples, comparable: 0, max_eof_excess: f64::NEG_INFINITY };
    for (p, eof) in results {
        if p >= reference_probability {
            report.comparable += 1;
            report.max_eof_excess = report.max_eof_excess.max(eof - reference_eof);
        }
    }
    report
}
