//! Spectral calculus for Hermitian matrices.

use crate::error::{Error, Result};
use crate::linalg::eigen::{hermitian_eigen, HermitianEigen, EIGEN_TOL};
use crate::linalg::matrix::ComplexMatrix;

/// Absolute tolerance (scaled by max(1, ‖M‖_F)) under which negative
/// eigenvalues are treated as rounding noise and clamped to zero.
pub const PSD_TOL: f64 = 1e-10;

/// Returns V·diag(f(max(λ_k, clamp_floor)))·V†.
pub fn matrix_fn_hermitian<F>(m: &ComplexMatrix, f: F, clamp_floor: f64) -> Result<ComplexMatrix>
where
    F: Fn(f64) -> f64,
{
    let eig = hermitian_eigen(m, EIGEN_TOL)?;
    apply_fn(&eig, f, clamp_floor)
}

/// Same as [`matrix_fn_hermitian`] on an existing decomposition.
pub fn apply_fn<F>(eig: &HermitianEigen, f: F, clamp_floor: f64) -> Result<ComplexMatrix>
where
    F: Fn(f64) -> f64,
{
    let mut vals = Vec::with_capacity(eig.dim());
    for &l in &eig.eigenvalues {
        let x = l.max(clamp_floor);
        let y = f(x);
        if !y.is_finite() {
            return Err(Error::DomainError { eigenvalue: x });
        }
        vals.push(y);
    }
    Ok(eig.reconstruct_with(&vals))
}

/// Eigenvalues with rounding-level negatives clamped to zero.
///
/// Anything below `−PSD_TOL·max(1, ‖M‖_F)` is a genuine PSD violation.
pub fn clamped_psd_eigenvalues(eig: &HermitianEigen) -> Result<Vec<f64>> {
    let scale = eig.eigenvalues.iter().map(|l| l * l).sum::<f64>().sqrt().max(1.0);
    eig.eigenvalues
        .iter()
        .map(|&l| {
            if l < -PSD_TOL * scale {
                Err(Error::NotPsd { min_eigenvalue: l })
            } else {
                Ok(l.max(0.0))
            }
        })
        .collect()
}

/// Eigenvalue level indistinguishable from zero after a backward-stable
/// eigensolve of a matrix with spectral radius `max_abs`.
pub fn null_cutoff(dim: usize, max_abs: f64) -> f64 {
    8.0 * dim as f64 * f64::EPSILON * max_abs
}

/// Principal square root of a PSD matrix.
pub fn sqrtm_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(m, EIGEN_TOL)?;
    sqrt_from_eigen(&eig)
}

pub(crate) fn sqrt_from_eigen(eig: &HermitianEigen) -> Result<ComplexMatrix> {
    let vals = clamped_psd_eigenvalues(eig)?;
    let cut = null_cutoff(eig.dim(), eig.max_abs_eigenvalue());
    let roots: Vec<f64> = vals.iter().map(|&l| if l <= cut { 0.0 } else { l.sqrt() }).collect();
    Ok(eig.reconstruct_with(&roots))
}

/// M^p for PSD M and real p.
///
/// Null eigenvalues (below the numerical cutoff) map to 0 for every p, so a
/// negative exponent yields the power on the support only.
pub fn powm_psd(m: &ComplexMatrix, p: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(m, EIGEN_TOL)?;
    power_from_eigen(&eig, p)
}

pub(crate) fn power_from_eigen(eig: &HermitianEigen, p: f64) -> Result<ComplexMatrix> {
    Ok(eig.reconstruct_with(&support_powers(eig, p)?))
}

/// λ_k^p on the support, 0 on the numerical kernel.
pub(crate) fn support_powers(eig: &HermitianEigen, p: f64) -> Result<Vec<f64>> {
    let vals = clamped_psd_eigenvalues(eig)?;
    let cut = null_cutoff(eig.dim(), eig.max_abs_eigenvalue());
    Ok(vals.iter().map(|&l| if l <= cut { 0.0 } else { l.powf(p) }).collect())
}

/// Natural matrix logarithm of a positive-definite matrix.
pub fn logm_pd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    matrix_fn_hermitian(m, f64::ln, f64::NEG_INFINITY)
}
