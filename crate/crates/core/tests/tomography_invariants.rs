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

use pairconc::exec::Execution;
use pairconc::tomography::{reconstruct, simulate_counts, CountMode, MeasurementSetting};
use pairconc::random::{random_density, task_rng};

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    (v[(n - 1) / 2] + v[n / 2]) / 2.0
}

fn median_error(shots: u64) -> f64 {
    let all = MeasurementSetting::all();
    median(Execution::Parallel.map_range(20, |k| {
        let rho = random_density(&mut task_rng(300, k as u64));
        let recs = simulate_counts(&rho, &all, shots, CountMode::Sampled { seed: 1000 + k as u64 }).unwrap();
        reconstruct(&recs).unwrap().trace_distance(&rho)
    }))
}

#[test]
fn error_shrinks_like_inverse_root_of_shots() {
    let ratio = median_error(10_000) / median_error(1_000_000);
    assert!((5.0..=20.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn exact_counts_reconstruct_exactly() {
    let all = MeasurementSetting::all();
    for i in 0..200u64 {
        let rho = random_density(&mut task_rng(301, i));
        let recs = simulate_counts(&rho, &all, 5000, CountMode::Exact).unwrap();
        assert!(reconstruct(&recs).unwrap().max_abs_diff(&rho) < 1e-10);
    }
}

#[test]
fn count_records_serialize() {
    let rho = random_density(&mut task_rng(302, 0));
    let recs = simulate_counts(&rho, &MeasurementSetting::all(), 100, CountMode::Sampled { seed: 3 }).unwrap();
    let text = serde_json::to_string(&recs).unwrap();
    let back: Vec<pairconc::tomography::CountRecord> = serde_json::from_str(&text).unwrap();
    assert_eq!(recs, back);
}
