//! Exact and numerical thermodynamics of the mean-field quantum Heisenberg
//! ferromagnet, computed through the random interchange process on the
//! complete graph.
//!
//! The partition function and the expected squared magnetisation are
//! polynomials in q = exp(-t) with rational coefficients; this crate
//! evaluates them exactly for small systems and in log-space floats for
//! systems with thousands of sites, always through at least two mutually
//! independent routes that are required to agree.

pub mod error;
pub mod logspace;
pub mod meanfield;
pub mod oracles;
pub mod qpoly;
pub mod repnum;
pub mod special;
pub mod symfunc;
pub mod young;

pub use error::Error;
pub use logspace::LogSigned;
pub use meanfield::{BigRational, CurvePoint, MassGrid, TransitionScan};
pub use qpoly::QPoly;
pub use symfunc::{ClassFunction, SymPoly};
pub use young::{BorderStrip, Partition, PreDiagram, WrapResult};
