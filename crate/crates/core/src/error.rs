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

use thiserror::Error;

/// Failures raised anywhere in the library.
///
/// The command-line runner groups these into configuration, state and
/// protocol classes (see [`Error::class`]) to pick an exit code.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NonHermitianInput(f64),

    #[error("state is not normalized (norm or trace deviates by {0:.3e})")]
    NotNormalized(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPositive(f64),

    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid angles: {0}")]
    InvalidAngles(String),

    #[error("R matrix does not describe a physical state: {0}")]
    NotAState(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("invalid shot count: {0}")]
    InvalidShots(String),

    #[error("tomography records incomplete: {0}")]
    IncompleteSettings(String),

    #[error("invalid netlist: {0}")]
    InvalidNetlist(String),

    #[error("protocol failed: {0}")]
    ProtocolFailed(String),

    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
}

/// Coarse grouping used for exit codes and error documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Config,
    State,
    Protocol,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            ConfigInvalid(_) | InvalidShots(_) | OutOfRange(_) | InvalidAngles(_) => ErrorClass::Config,
            NonHermitianInput(_) | NotNormalized(_) | NotPositive(_) | NonFinite | NotAState(_) => {
                ErrorClass::State
            }
            NotUnitary(_)
            | DimensionMismatch { .. }
            | NotApplicable(_)
            | IncompleteSettings(_)
            | InvalidNetlist(_)
            | ProtocolFailed(_) => ErrorClass::Protocol,
        }
    }

    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        use Error::*;
        match self {
            NonHermitianInput(_) => "NonHermitianInput",
            NotNormalized(_) => "NotNormalized",
            NotPositive(_) => "NotPositive",
            NotUnitary(_) => "NotUnitary",
            NonFinite => "NonFinite",
            DimensionMismatch { .. } => "DimensionMismatch",
            InvalidAngles(_) => "InvalidAngles",
            NotAState(_) => "NotAState",
            NotApplicable(_) => "NotApplicable",
            OutOfRange(_) => "OutOfRange",
            InvalidShots(_) => "InvalidShots",
            IncompleteSettings(_) => "IncompleteSettings",
            InvalidNetlist(_) => "InvalidNetlist",
            ProtocolFailed(_) => "ProtocolFailed",
            ConfigInvalid(_) => "ConfigInvalid",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
