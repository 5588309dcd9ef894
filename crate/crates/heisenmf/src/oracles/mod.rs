//! Independent cross-checks for the main pipeline: a character-theoretic
//! heat kernel on the symmetric group, a dense quantum spin computation,
//! and direct Monte Carlo simulation of the interchange dynamics.

pub mod heat;
pub mod mc;
pub mod quantum;

pub use heat::HeatKernel;
pub use mc::{McConfig, McEstimate, McResults};
pub use quantum::{quantum_observables, QuantumObservables};
