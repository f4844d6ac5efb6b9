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

use std::path::Path;
use std::process::{Command, Output};

use proptest::prelude::*;

use pairconc::runner::{ExperimentConfig, InputState, Mode, StateFamily};

fn run_cli(dir: &Path, cmd: &str, config: &str, extra: &[&str]) -> Output {
    let path = dir.join(format!("{cmd}.config.json"));
    std::fs::write(&path, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_pairconc"))
        .arg(cmd)
        .arg("--config")
        .arg(&path)
        .args(extra)
        .output()
        .unwrap()
}

fn error_code(out: &Output) -> String {
    let doc: serde_json::Value = serde_json::from_slice(&out.stderr).expect("error document is JSON");
    doc["error"]["code"].as_str().unwrap().to_string()
}

#[test]
fn pure_run_reports_half_probability() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"schema_version": 1, "input_state": {"family": {"name": "pure-schmidt", "alpha": 0.5235987755982988}}}"#;
    let out = run_cli(dir.path(), "concentrate-pure", cfg, &[]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((doc["success_probability"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert_eq!(doc["schema_version"], 1);
}

#[test]
fn exit_codes_follow_error_class() {
    let dir = tempfile::tempdir().unwrap();
    let both = r#"{"schema_version": 1, "input_state": {"amplitudes": [[1,0],[0,0],[0,0],[0,0]], "family": {"name": "werner", "p": 0.5}}}"#;
    let out = run_cli(dir.path(), "concentrate-mixed", both, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_code(&out), "ConfigInvalid");

    let unnormalized = r#"{"schema_version": 1, "input_state": {"amplitudes": [[1,0],[1,0],[0,0],[0,0]]}}"#;
    let out = run_cli(dir.path(), "concentrate-pure", unnormalized, &[]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_code(&out), "NotNormalized");

    let bad_netlist = r#"{"schema_version": 1, "input_state": {"family": {"name": "werner", "p": 0.5}},
        "protocol": {"netlist": {"paths": [1, 1], "elements": [{"kind": "pbs", "photon": "A"}]}}}"#;
    let out = run_cli(dir.path(), "simulate", bad_netlist, &[]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(error_code(&out), "InvalidNetlist");

    let missing = Command::new(env!("CARGO_BIN_EXE_pairconc")).arg("sweep").output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn sweep_csv_has_header_and_ordered_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"schema_version": 1, "input_state": {"family": {"name": "pure-schmidt", "alpha": 0}},
        "protocol": {"beta": 0.7853981633974483},
        "sweep": {"axes": [{"parameter": "alpha", "start": 0, "stop": 0.7853981633974483, "points": 5}]}}"#;
    let out = run_cli(dir.path(), "sweep", cfg, &["--format", "csv", "--out-dir", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("index,alpha,status,success_probability"));
    for (k, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        let alpha: f64 = cells[1].parse().unwrap();
        let p: f64 = cells[3].parse().unwrap();
        assert_eq!(cells[0], k.to_string());
        assert!((p - 2.0 * alpha.sin().powi(2)).abs() < 1e-12);
    }
}

#[test]
fn circuit_mode_runs_a_netlist() {
    let dir = tempfile::tempdir().unwrap();
    // a beam splitter on A sends V to path 1: post-selecting path 0 keeps |H⟩_A
    let cfg = r#"{"schema_version": 1, "input_state": {"family": {"name": "pure-schmidt", "alpha": 0.7853981633974483}},
        "protocol": {"netlist": {"paths": [2, 1], "elements": [{"kind": "pbs", "photon": "A"}]}}}"#;
    let out = run_cli(dir.path(), "simulate", cfg, &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((doc["success_probability"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!(doc["entanglement_after"]["concurrence"].as_f64().unwrap() < 1e-12);
}

fn family() -> impl Strategy<Value = StateFamily> {
    prop_oneof![
        (0.0..1.0f64).prop_map(|alpha| StateFamily::PureSchmidt { alpha }),
        (0.0..1.0f64).prop_map(|p| StateFamily::Werner { p }),
        prop::array::uniform4(0.0..1.0f64).prop_map(|weights| StateFamily::BellDiagonal { weights }),
    ]
}

proptest! {
    #[test]
    fn config_round_trips(f in family(), seed in prop::option::of(any::<u64>()), shots in prop::option::of(0u64..1_000_000), beta in prop::option::of(0.0..0.78f64)) {
        let mut cfg = ExperimentConfig::new(Mode::Tomography, InputState::family(f));
        cfg.seed = seed;
        cfg.protocol.shots = shots;
        cfg.protocol.beta = beta;
        let again = ExperimentConfig::from_json(&cfg.to_json()).unwrap();
        prop_assert_eq!(cfg, again);
    }
}
