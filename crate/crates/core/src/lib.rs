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

//! Linear-optical entanglement concentration for single photon pairs.
//!
//! The crate builds the optical circuits (wave plates, polarizing beam
//! splitters, Mach-Zehnder POVMs), runs them on polarization ⊗ path states
//! with post-selection, and implements the pure-state and mixed-state
//! concentration protocols together with simulated tomography and the usual
//! two-qubit entanglement measures.
//!
//! Modules, bottom-up:
//!
//! * [`qstate`]: states, Pauli algebra, R-matrix conversions.
//! * [`optics`]: Jones matrices and wave-plate synthesis.
//! * [`povm`]: POVM dilation, the five-gate factorization and netlist simulation.
//! * [`concentration`]: pure and mixed protocols, Lorentz normal form,
//!   quasi-distillation, variable-beam-splitter equivalence.
//! * [`measures`] and [`tomography`]: concurrence, entanglement of formation,
//!   count simulation and linear-inversion reconstruction.
//! * [`runner`]: configuration, result documents, sweeps; backs the `pairconc`
//!   binary.
//! * [`exec`]: data-parallel helpers (rayon when the `parallel` feature is on).

pub mod concentration;
pub mod error;
pub mod exec;
pub mod measures;
pub mod optics;
pub mod povm;
pub mod qstate;
pub mod random;
pub mod runner;
pub mod tomography;

pub use error::{Error, Result};
