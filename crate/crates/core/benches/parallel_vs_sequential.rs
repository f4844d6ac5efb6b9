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

//! Sequential vs rayon-parallel execution of the batch workloads. Build with
//! `--no-default-features` to measure the fallback path on its own.

use std::f64::consts::FRAC_PI_4;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use pairconc::concentration::{lorentz_normal_form, mixed_filter_search};
use pairconc::exec::Execution;
use pairconc::random::{random_density, task_rng};
use pairconc::runner::{run_sweep, ExperimentConfig, InputState, Mode, StateFamily, SweepAxis, SweepParameter, SweepSpec};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn filter_search(c: &mut Criterion) {
    let rho = random_density(&mut task_rng(1, 0));
    let mut g = c.benchmark_group("filter_search_4k");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| mixed_filter_search(black_box(&rho), 0.0, 0.0, 4000, 7, exec))
        });
    }
    g.finish();
}

fn normal_forms(c: &mut Criterion) {
    let states: Vec<_> = (0..200).map(|i| random_density(&mut task_rng(2, i))).collect();
    let mut g = c.benchmark_group("normal_forms_200");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| exec.map_slice(black_box(&states), |s| lorentz_normal_form(&s.to_rmatrix()).map(|nf| nf.sigma)))
        });
    }
    g.finish();
}

fn pure_sweep(c: &mut Criterion) {
    let axis = |parameter| SweepAxis { parameter, start: 0.0, stop: FRAC_PI_4, points: 20 };
    let mut cfg = ExperimentConfig::new(Mode::Pure, InputState::family(StateFamily::PureSchmidt { alpha: 0.0 }));
    cfg.sweep = Some(SweepSpec { axes: vec![axis(SweepParameter::Alpha), axis(SweepParameter::Beta)] });
    let mut g = c.benchmark_group("pure_sweep_20x20");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| run_sweep(black_box(&cfg), Mode::Pure, exec).expect("valid sweep"))
        });
    }
    g.finish();
}

criterion_group!(benches, filter_search, normal_forms, pure_sweep);
criterion_main!(benches);
