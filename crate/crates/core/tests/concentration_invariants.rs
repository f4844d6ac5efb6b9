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

use std::f64::consts::FRAC_PI_4;

use nalgebra::Matrix4;
use num_complex::Complex64 as C;
use proptest::prelude::*;

use pairconc::concentration::lorentz::{filter_of_lorentz, lorentz_of_filter};
use pairconc::concentration::{
    execute_plan, execute_plan_kraus, lorentz_normal_form, plan_mixed, plan_pure, pure_optimality_search,
    PureConcentrationSpec,
};
use pairconc::exec::Execution;
use pairconc::measures::entanglement_of_formation;
use pairconc::qstate::{DensityMatrix4, Mat2, TwoQubitState};
use pairconc::random::{random_density, random_filter, rng_from_seed};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_covariant_under_local_filters(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let rho = random_density(&mut rng);
        let (fa, fb) = (random_filter(&mut rng), random_filter(&mut rng));
        let (m, p) = rho.filtered(&fa, &fb);
        prop_assume!(p > 1e-6);
        let filtered = DensityMatrix4::normalized(m).unwrap();
        let s1 = lorentz_normal_form(&rho.to_rmatrix()).unwrap().normalized_sigma();
        let s2 = lorentz_normal_form(&filtered.to_rmatrix()).unwrap().normalized_sigma();
        prop_assert!((s1 - s2).abs().max() < 1e-8, "{s1} vs {s2}");
    }

    #[test]
    fn lorentz_factors_come_from_filters(seed in any::<u64>()) {
        let rho = random_density(&mut rng_from_seed(seed));
        let nf = lorentz_normal_form(&rho.to_rmatrix()).unwrap();
        for l in [&nf.l_a, &nf.l_b] {
            let a = filter_of_lorentz(l);
            let scale = a.determinant().norm();
            let rebuilt: Matrix4<f64> = lorentz_of_filter(&a) / scale;
            prop_assert!((rebuilt - l).abs().max() < 1e-8);
        }
    }

    #[test]
    fn mixed_plans_are_physical_and_consistent(seed in any::<u64>()) {
        let rho = random_density(&mut rng_from_seed(seed));
        let plan = plan_mixed(&rho).unwrap();
        for arm in &plan.arms {
            let s = arm.filter.svd(false, false).singular_values;
            prop_assert!(s.max() <= 1.0 + 1e-12 && s.min() > 0.0);
            // a completing branch exists: I − F†F ⪰ 0
            let rest = Mat2::identity() - arm.filter.adjoint() * arm.filter;
            let ev = ((rest + rest.adjoint()) * C::new(0.5, 0.0)).symmetric_eigen().eigenvalues;
            prop_assert!(ev.min() > -1e-12);
        }
        let input = TwoQubitState::Mixed(rho);
        let circuit = execute_plan(&plan, &input).unwrap();
        let algebra = execute_plan_kraus(&plan, &input);
        prop_assert!((circuit.success_probability - algebra.success_probability).abs() < 1e-10);
        let (a, b) = (circuit.output_state.unwrap(), algebra.output_state.unwrap());
        prop_assert!(a.max_abs_diff(&b) < 1e-10);
        prop_assert!(entanglement_of_formation(&a) >= entanglement_of_formation(&rho) - 1e-9);
    }

    #[test]
    fn pure_plan_reaches_target(alpha in 0.01..FRAC_PI_4, frac in 0.0..1.0f64) {
        let beta = alpha + (FRAC_PI_4 - alpha) * frac;
        let spec = PureConcentrationSpec::new(alpha, beta).unwrap();
        let out = execute_plan(&plan_pure(&spec).unwrap(), &TwoQubitState::Pure(spec.source())).unwrap();
        let want = (alpha.sin() / beta.sin()).powi(2);
        prop_assert!((out.success_probability - want).abs() < 1e-10);
        prop_assert!(out.output_pure.unwrap().fidelity(&spec.target()) > 1.0 - 1e-10);
    }
}

/// Largest success probability any filter can have while its output keeps
/// fidelity `1 − slack` with `cos β |HH⟩ + sin β |VV⟩`, minus the optimum.
///
/// Such an output has Schmidt angle at least `β − arccos √(1 − slack)`, and
/// no local operation reaches Schmidt angle `b` from `α` with probability
/// above `sin² α / sin² b`. The allowance is first order in `√slack`.
fn excess_allowance(alpha: f64, beta: f64, slack: f64) -> f64 {
    let reachable = (beta - (1.0 - slack).sqrt().acos()).max(alpha);
    (alpha.sin() / reachable.sin()).powi(2) - (alpha.sin() / beta.sin()).powi(2)
}

#[test]
fn no_single_arm_filter_beats_the_optimal_probability() {
    for (alpha, beta) in [(0.2, FRAC_PI_4), (0.5, 0.7), (0.1, 0.3)] {
        let spec = PureConcentrationSpec::new(alpha, beta).unwrap();
        for slack in [1e-6, 1e-10] {
            let report = pure_optimality_search(&spec, 10_000, slack, 31, Execution::Parallel);
            let allowance = excess_allowance(alpha, beta, slack);
            assert!(report.qualifying > 0);
            assert!(
                report.max_excess <= allowance + 1e-12,
                "({alpha}, {beta}, {slack}) excess {} > {allowance}",
                report.max_excess
            );
        }
    }
}
