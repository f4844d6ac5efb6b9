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

//! Orchestration behind the `pairconc` binary: configuration in, result
//! documents out.
//!
//! Every run is a pure function of its configuration and seed. Wall time is
//! recorded only on request so that default output is byte-reproducible.

pub mod config;
pub mod record;
pub mod sweep;

use std::time::Instant;

use crate::concentration::{
    execute_plan, execute_plan_kraus, lorentz_normal_form, mixed_filter_search, plan_mixed, plan_pure,
    plan_pure_for_state, quasi_distill, vbs_to_plan, ConcentrationPlan, PureConcentrationSpec, VbsParams,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::measures::Entanglement;
use crate::povm::{simulate_netlist, ModeState};
use crate::qstate::{PureState2Q, TwoQubitState};
use crate::tomography::{reconstruct, simulate_counts, CountMode, MeasurementSetting};

pub use config::{ExperimentConfig, InputState, Mode, ProtocolParams, StateFamily, TomographyTarget, SCHEMA_VERSION};
pub use record::{Details, ResultRecord, Scalars, StateDoc};
pub use sweep::{run_sweep, SweepAxis, SweepParameter, SweepRow, SweepSpec, SweepTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    pub exec: Execution,
    pub timing: bool,
}

pub fn run(config: &ExperimentConfig, mode: Mode, opts: RunOptions) -> Result<ResultRecord> {
    config.validate(mode)?;
    let start = Instant::now();
    let input = config.input_state.build()?;
    let mut record = match mode {
        Mode::Pure => run_pure(config, &input)?,
        Mode::Mixed => run_mixed(config, &input, opts.exec)?,
        Mode::VbsCompare => run_vbs(config, &input)?,
        Mode::Tomography => run_tomography(config, &input)?,
        Mode::Circuit => run_circuit(config, &input)?,
    };
    if opts.timing {
        record.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    record.check_finite()?;
    Ok(record)
}

fn base_record(config: &ExperimentConfig, mode: Mode, input: &TwoQubitState, details: Details) -> ResultRecord {
    let mut echo = config.clone();
    echo.mode = Some(mode);
    ResultRecord {
        schema_version: SCHEMA_VERSION,
        mode,
        config: echo,
        success_probability: 0.0,
        entanglement_before: Entanglement::of(&input.density()),
        entanglement_after: None,
        output_state: None,
        fidelity_to_target: None,
        details,
        wall_time_s: None,
    }
}

fn pure_plan(config: &ExperimentConfig, input: &TwoQubitState) -> Result<ConcentrationPlan> {
    let beta = config.protocol.beta();
    match (&config.input_state.family, input) {
        (Some(StateFamily::PureSchmidt { alpha }), _) => plan_pure(&PureConcentrationSpec::new(*alpha, beta)?),
        (_, TwoQubitState::Pure(psi)) => plan_pure_for_state(psi, beta),
        _ => Err(Error::ConfigInvalid("pure mode needs a pure input state".into())),
    }
}

fn run_pure(config: &ExperimentConfig, input: &TwoQubitState) -> Result<ResultRecord> {
    let plan = pure_plan(config, input)?;
    let out = execute_plan(&plan, input)?;
    let target = PureState2Q::schmidt(config.protocol.beta());
    let details = Details::Plan {
        plan: plan.kind,
        predicted_probability: plan.predicted_probability,
        slots: record::slot_docs(&plan),
    };
    let mut r = base_record(config, Mode::Pure, input, details);
    r.success_probability = out.success_probability;
    r.entanglement_after = out.entanglement_after;
    r.fidelity_to_target = out.output_pure.map(|p| p.fidelity(&target));
    r.output_state = out.output_pure.as_ref().map(StateDoc::pure);
    Ok(r)
}

fn run_mixed(config: &ExperimentConfig, input: &TwoQubitState, exec: Execution) -> Result<ResultRecord> {
    let rho = input.density();
    let nf = lorentz_normal_form(&rho.to_rmatrix())?;
    let plan = plan_mixed(&rho)?;
    let out = execute_plan(&plan, input)?;
    let quasi_family = if nf.diagonalizable {
        None
    } else {
        let grid = config.protocol.epsilon_grid.unwrap_or_default();
        let rows = quasi_distill(&rho, &grid)?
            .iter()
            .map(|step| {
                let o = execute_plan_kraus(&step.plan, input);
                record::QuasiRow {
                    epsilon: step.epsilon,
                    success_probability: o.success_probability,
                    entanglement: o.entanglement_after,
                }
            })
            .collect();
        Some(rows)
    };
    let search = match (config.protocol.search_samples, config.seed) {
        (Some(n), Some(seed)) if n > 0 => {
            let eof = out.entanglement_after.map_or(0.0, |e| e.eof);
            Some(mixed_filter_search(&rho, out.success_probability, eof, n, seed, exec).into())
        }
        _ => None,
    };
    let sigma = nf.normalized_sigma();
    let details = Details::Mixed {
        plan: plan.kind,
        diagonalizable: nf.diagonalizable,
        normal_form: [sigma[0], sigma[1], sigma[2], sigma[3]],
        output_off_diagonal: out.output_state.map(|s| s.to_rmatrix().off_diagonal_mass()),
        slots: record::slot_docs(&plan),
        quasi_family,
        search,
    };
    let mut r = base_record(config, Mode::Mixed, input, details);
    r.success_probability = out.success_probability;
    r.entanglement_after = out.entanglement_after;
    r.output_state = out.output_state.as_ref().map(StateDoc::mixed);
    Ok(r)
}

fn max_state_gap(a: &Option<crate::qstate::DensityMatrix4>, b: &Option<crate::qstate::DensityMatrix4>) -> f64 {
    match (a, b) {
        (Some(x), Some(y)) => x.max_abs_diff(y),
        (None, None) => 0.0,
        _ => 1.0,
    }
}

fn run_vbs(config: &ExperimentConfig, input: &TwoQubitState) -> Result<ResultRecord> {
    // without explicit transmissions, use the ones equivalent to the pure plan
    let reference = match input {
        TwoQubitState::Pure(_) => Some(pure_plan(config, input)?),
        TwoQubitState::Mixed(_) => None,
    };
    let vbs = match (config.protocol.vbs, &reference) {
        (Some(v), _) => v,
        (None, Some(plan)) => {
            let f = plan.arm(crate::qstate::Arm::A).decomposition;
            if (f.right - crate::qstate::Mat2::identity()).norm() > 1e-12 {
                return Err(Error::ConfigInvalid(
                    "input is not in Schmidt form; give protocol.vbs explicitly".into(),
                ));
            }
            VbsParams { eta_ha: f.cos_theta, eta_va: f.cos_delta, eta_hb: 1.0, eta_vb: 1.0 }
        }
        (None, None) => return Err(Error::ConfigInvalid("vbs-compare needs protocol.vbs".into())),
    };
    let plan = vbs_to_plan(&vbs)?;
    let out = execute_plan(&plan, input)?;
    let t = vbs.transmission_matrix();
    let (p_direct, direct) = {
        let m = t * input.density().matrix() * t.adjoint();
        let p = m.trace().re;
        let s = if p > crate::povm::EMPTY_BRANCH {
            Some(crate::qstate::DensityMatrix4::normalized(m)?)
        } else {
            None
        };
        (p, s)
    };
    let pure_plan_deviation = match &reference {
        Some(plan) => {
            let o = execute_plan(plan, input)?;
            Some(max_state_gap(&o.output_state, &out.output_state).max((o.success_probability - out.success_probability).abs()))
        }
        None => None,
    };
    let details = Details::VbsCompare {
        vbs,
        transmission_deviation: max_state_gap(&out.output_state, &direct),
        probability_deviation: (out.success_probability - p_direct).abs(),
        pure_plan_deviation,
    };
    let mut r = base_record(config, Mode::VbsCompare, input, details);
    r.success_probability = out.success_probability;
    r.entanglement_after = out.entanglement_after;
    r.output_state = match (&out.output_pure, &out.output_state) {
        (Some(p), _) => Some(StateDoc::pure(p)),
        (None, Some(d)) => Some(StateDoc::mixed(d)),
        _ => None,
    };
    Ok(r)
}

fn run_tomography(config: &ExperimentConfig, input: &TwoQubitState) -> Result<ResultRecord> {
    let p = &config.protocol;
    let shots = p.shots.expect("validated");
    let (measured, success) = match p.tomography_target.unwrap_or_default() {
        TomographyTarget::Input => (input.density(), 1.0),
        TomographyTarget::Concentrated => {
            let plan = match input {
                TwoQubitState::Pure(_) => pure_plan(config, input)?,
                TwoQubitState::Mixed(d) => plan_mixed(d)?,
            };
            let out = execute_plan(&plan, input)?;
            let state = out
                .output_state
                .ok_or_else(|| Error::ProtocolFailed("success branch is empty; nothing to measure".into()))?;
            (state, out.success_probability)
        }
    };
    let mode = if p.sampled { CountMode::Sampled { seed: config.seed.expect("validated") } } else { CountMode::Exact };
    let counts = simulate_counts(&measured, &MeasurementSetting::all(), shots, mode)?;
    let estimate = reconstruct(&counts)?;
    let details = Details::Tomography { shots, sampled: p.sampled, trace_distance: estimate.trace_distance(&measured), counts };
    let mut r = base_record(config, Mode::Tomography, input, details);
    r.success_probability = success;
    r.entanglement_after = Some(Entanglement::of(&estimate));
    r.output_state = Some(StateDoc::mixed(&estimate));
    Ok(r)
}

fn run_circuit(config: &ExperimentConfig, input: &TwoQubitState) -> Result<ResultRecord> {
    let net = config.protocol.netlist.as_ref().expect("validated");
    let [la, lb] = config.protocol.postselect.unwrap_or([0, 0]);
    if la >= net.paths[0] || lb >= net.paths[1] {
        return Err(Error::ConfigInvalid(format!("postselect [{la}, {lb}] outside paths {:?}", net.paths)));
    }
    let out = simulate_netlist(net, &ModeState::inject(input, net.paths))?;
    let (p, state) = out.post_select(la, lb);
    let details = Details::Circuit { postselect: [la, lb], modes: net.dim() };
    let mut r = base_record(config, Mode::Circuit, input, details);
    r.success_probability = p;
    r.entanglement_after = state.map(|s| Entanglement::of(&s.density()));
    r.output_state = state.as_ref().map(StateDoc::of);
    Ok(r)
}
