//! Quantum simulation toolkit: dense state-vector simulation, the {H, T, CNOT}
//! circuit model with QFT and brute-force compilation, Trotterized Hamiltonian
//! evolution with error analysis, QFT-based phase estimation and spectroscopy,
//! and surface-code decoding with Monte Carlo threshold estimation.
//!
//! Conventions used throughout:
//! - Qubit 0 is the least significant bit of every basis index.
//! - Gate matrices list the first qubit as the most significant matrix bit.
//! - Global phase is unphysical; state comparisons go through
//!   [`StateVector::equal_up_to_phase`].
//!
//! The numeric scalar is generic ([`Scalar`], implemented for `f32`/`f64`);
//! the `*64`/`*32` aliases at the crate root pick a concrete precision.

pub mod circuit;
pub mod compile;
pub mod error;
pub mod gate;
pub mod hamiltonian;
pub mod linalg;
pub mod pauli;
pub mod phasest;
pub mod qft;
pub mod scalar;
pub mod seed;
pub mod statevec;
pub mod surface;
pub mod trotter;

pub use circuit::Circuit;
pub use compile::{compile_1q, AlphabetGate, CompileOutcome};
pub use error::{Error, Result};
pub use gate::{Gate, GateKind};
pub use hamiltonian::{Geometry, PauliHamiltonian, PauliTerm};
pub use linalg::Matrix;
pub use pauli::Pauli;
pub use phasest::{PhaseEstimationConfig, ProjectionOutcome, SpectrumHistogram};
pub use qft::qft_circuit;
pub use scalar::{Scalar, C};
pub use statevec::{helstrom_success, MeasurementOutcome, StateVector};
pub use surface::{SurfaceLattice, TrialStats};
pub use trotter::TrotterPlan;

/// Double-precision aliases (the default choice).
pub type StateVector64 = StateVector<f64>;
pub type Matrix64 = Matrix<f64>;
pub type Circuit64 = Circuit<f64>;
pub type Gate64 = Gate<f64>;
pub type PauliHamiltonian64 = PauliHamiltonian<f64>;
pub type TrotterPlan64 = TrotterPlan<f64>;

/// Single-precision aliases.
pub type StateVector32 = StateVector<f32>;
pub type Matrix32 = Matrix<f32>;
pub type Circuit32 = Circuit<f32>;
pub type Gate32 = Gate<f32>;
pub type PauliHamiltonian32 = PauliHamiltonian<f32>;
pub type TrotterPlan32 = TrotterPlan<f32>;
