//! Dense complex linear algebra kernels.

pub mod cholesky;
pub mod eigen;
pub mod func;
pub mod matrix;
pub mod operator;

pub use cholesky::{pivoted_cholesky, CholeskyFactor};
pub use eigen::{hermitian_eigen, HermitianEigen, EIGEN_TOL};
pub use func::{logm_pd, matrix_fn_hermitian, powm_psd, sqrtm_psd};
pub use matrix::{apply, matmul, ComplexMatrix, C64};
pub use operator::{LinearOperator, ProductOperator};
