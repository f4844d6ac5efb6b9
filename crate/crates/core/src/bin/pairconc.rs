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

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pairconc::error::ErrorClass;
use pairconc::exec::Execution;
use pairconc::runner::{run, run_sweep, ExperimentConfig, Mode, RunOptions, SCHEMA_VERSION};
use pairconc::{Error, Result};

#[derive(Parser)]
#[command(name = "pairconc", version, about = "Entanglement concentration of photon pairs in linear optics")]
struct Cli {
    /// Experiment configuration (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the seed in the configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write results here instead of standard output.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Record wall time in the result (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    /// Run on a single thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Concentrate a pure state to a target Schmidt angle.
    ConcentratePure,
    /// Filter a mixed state to its Bell-diagonal normal form.
    ConcentrateMixed,
    /// Compare variable-beam-splitter filtering with the interferometric plan.
    VbsCompare,
    /// Simulate polarization tomography and reconstruct the state.
    Tomography,
    /// Run a user-supplied optical netlist and post-select.
    Simulate,
    /// Grid sweep of the configured mode (default: pure).
    Sweep,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::ConcentratePure => "concentrate-pure",
            Command::ConcentrateMixed => "concentrate-mixed",
            Command::VbsCompare => "vbs-compare",
            Command::Tomography => "tomography",
            Command::Simulate => "simulate",
            Command::Sweep => "sweep",
        }
    }

    fn mode(self, config: &ExperimentConfig) -> Mode {
        match self {
            Command::ConcentratePure => Mode::Pure,
            Command::ConcentrateMixed => Mode::Mixed,
            Command::VbsCompare => Mode::VbsCompare,
            Command::Tomography => Mode::Tomography,
            Command::Simulate => Mode::Circuit,
            Command::Sweep => config.mode.unwrap_or(Mode::Pure),
        }
    }
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig> {
    let path = cli.config.as_ref().ok_or_else(|| Error::ConfigInvalid("--config is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ConfigInvalid(format!("cannot read {}: {e}", path.display())))?;
    let mut cfg = ExperimentConfig::from_json(&text)?;
    if cli.seed.is_some() {
        cfg.seed = cli.seed;
    }
    Ok(cfg)
}

fn execute(cli: &Cli) -> Result<()> {
    let cfg = load_config(cli)?;
    let mode = cli.command.mode(&cfg);
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let text = match cli.command {
        Command::Sweep => {
            let table = run_sweep(&cfg, mode, exec)?;
            match cli.format {
                Format::Csv => table.to_csv(),
                Format::Json => to_json(&table),
            }
        }
        _ => {
            let record = run(&cfg, mode, RunOptions { exec, timing: cli.timing })?;
            match cli.format {
                Format::Csv => pairconc::runner::record::single_row_csv(&record),
                Format::Json => to_json(&record),
            }
        }
    };
    emit(cli, &cfg, &text)
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("result serializes");
    s.push('\n');
    s
}

fn emit(cli: &Cli, cfg: &ExperimentConfig, text: &str) -> Result<()> {
    let Some(dir) = &cli.out_dir else {
        print!("{text}");
        return Ok(());
    };
    let configured = cfg.output.as_ref().and_then(|o| match cli.format {
        Format::Json => o.json.clone(),
        Format::Csv => o.csv.clone(),
    });
    let ext = match cli.format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    let file = configured.unwrap_or_else(|| format!("{}.{ext}", cli.command.name()));
    write_file(&dir.join(file), text)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::ConfigInvalid(format!("cannot write {}: {e}", path.display()));
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(io)?;
    }
    std::fs::write(path, text).map_err(io)
}

fn report(class: &str, code: &str, message: &str) {
    let doc = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "error": { "class": class, "code": code, "message": message },
    });
    eprintln!("{doc}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report("config", "UsageError", e.to_string().trim());
            return ExitCode::from(2);
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (class, code) = match e.class() {
                ErrorClass::Config => ("config", 2),
                ErrorClass::State => ("state", 3),
                ErrorClass::Protocol => ("protocol", 4),
            };
            report(class, e.code(), &e.to_string());
            ExitCode::from(code)
        }
    }
}
