//! Fixtures shared by the benchmarks.

use qfid_core::harness::{cell_pair, cell_seed};
use qfid_core::DensityMatrix;

/// Dimensions swept by the fidelity benchmarks.
pub const DIMS: [usize; 5] = [2, 4, 8, 16, 32];

/// Chebyshev degree for the cheb benchmarks; kept modest so one iteration
/// stays in the millisecond range at the largest dimension.
pub const CHEB_DEGREE: usize = 200;

pub const CHEB_PROBES: usize = 16;

/// The full-rank pair the timing harness would use for (dim, trial 0).
pub fn fixture_pair(dim: usize) -> (DensityMatrix, DensityMatrix) {
    cell_pair(dim, cell_seed(0, dim, 0)).expect("dim ≥ 1")
}
