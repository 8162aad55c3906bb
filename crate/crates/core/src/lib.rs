//! Fidelity and Rényi-family divergences between density matrices.
//!
//! The Uhlmann–Jozsa fidelity F(ρ,σ) = (Tr√(√ρσ√ρ))² is computed along
//! three independent routes that are expected to agree:
//!
//! | route | module | how |
//! |-------|--------|-----|
//! | uhlmann | [`measures::fidelity_uhlmann`] | two Hermitian eigendecompositions |
//! | product | [`measures::fidelity_product`] | (Tr√(ρσ))² via a Cholesky similarity |
//! | cheb | [`measures::fidelity_cheb`] | Chebyshev series for √x, moments or stochastic probes, no diagonalization |
//!
//! The same trace-cyclicity identity that links the first two routes also
//! simplifies the α-z Rényi divergence; see [`measures`]. [`povm`] checks the
//! measurement characterization of fidelity numerically, and [`harness`]
//! produces timing tables.

pub mod chebyshev;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod measures;
pub mod povm;
pub mod states;

pub use error::{Error, ErrorClass, Result};
pub use linalg::{ComplexMatrix, C64};
pub use states::{DensityMatrix, ProbVector, SeededRng};
