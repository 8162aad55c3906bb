//! Classical and quantum fidelity along three independent routes.

use std::fmt;

use crate::chebyshev::{
    spectral_bound, sqrt_coeffs_closed, trace_fn_exact_moments, trace_fn_hutchinson, TraceEstimate,
};
use crate::error::{Error, Result};
use crate::linalg::func::{clamped_psd_eigenvalues, null_cutoff, sqrt_from_eigen};
use crate::linalg::{hermitian_eigen, matmul, pivoted_cholesky, HermitianEigen, ProductOperator, EIGEN_TOL};
use crate::states::{DensityMatrix, ProbVector, SeededRng};

/// Raw fidelities this far outside [0, 1] are clamped; beyond, they are errors.
pub const CLAMP_TOL: f64 = 1e-9;
/// Relative pivot threshold of the Cholesky factorization in the product route.
pub const CHOLESKY_TOL: f64 = 1e-13;
/// Power iterations used to bound the spectrum of ρσ.
pub const BOUND_ITERS: usize = 200;
/// Smallest Chebyshev degree accepted by [`fidelity_cheb`].
pub const MIN_CHEB_DEGREE: usize = 16;
/// Default Chebyshev degree for the √x expansion.
pub const DEFAULT_CHEB_DEGREE: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FidelityMethod {
    Uhlmann,
    Product,
    Cheb,
}

impl FidelityMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            FidelityMethod::Uhlmann => "uhlmann",
            FidelityMethod::Product => "product",
            FidelityMethod::Cheb => "cheb",
        }
    }
}

impl fmt::Display for FidelityMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for FidelityMethod {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "uhlmann" => Ok(Self::Uhlmann),
            "product" => Ok(Self::Product),
            "cheb" => Ok(Self::Cheb),
            other => Err(format!("unknown fidelity method {other:?}")),
        }
    }
}

/// A fidelity value with the work it took to compute it.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityReport {
    /// In [0, 1].
    pub value: f64,
    /// Value before clamping.
    pub raw_value: f64,
    pub method: FidelityMethod,
    /// Estimate of Tr√(ρσ) (cheb route only).
    pub estimate: Option<TraceEstimate>,
    /// Standard error of `value` by the delta method, 2·|Tr√|·se (cheb only).
    pub std_error: Option<f64>,
    pub diagonalizations: usize,
    pub multiplications: usize,
}

/// (Σ_j √(p_j q_j))², the squared Bhattacharyya coefficient.
pub fn classical_fidelity(p: &ProbVector, q: &ProbVector) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimMismatch(format!("{} vs {} outcomes", p.len(), q.len())));
    }
    let bc: f64 = p.probs().iter().zip(q.probs()).map(|(a, b)| (a * b).sqrt()).sum();
    Ok((bc * bc).min(1.0))
}

fn check_dims(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch(format!(
            "ρ is {}-dimensional, σ is {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    Ok(())
}

fn clamp_fidelity(raw: f64) -> Result<f64> {
    if !raw.is_finite() || !(-CLAMP_TOL..=1.0 + CLAMP_TOL).contains(&raw) {
        return Err(Error::FidelityOutOfRange(raw));
    }
    Ok(raw.clamp(0.0, 1.0))
}

/// Σ_k √λ_k over a PSD spectrum; eigenvalues at the numerical-zero level
/// contribute nothing.
pub(crate) fn trace_sqrt(eig: &HermitianEigen) -> Result<f64> {
    trace_sqrt_above(eig, null_cutoff(eig.dim(), eig.max_abs_eigenvalue()))
}

fn trace_sqrt_above(eig: &HermitianEigen, cut: f64) -> Result<f64> {
    let vals = clamped_psd_eigenvalues(eig)?;
    Ok(vals.iter().filter(|&&l| l > cut).map(|l| l.sqrt()).sum())
}

/// Route A: (Tr√(√ρ·σ·√ρ))².
pub fn fidelity_uhlmann(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<FidelityReport> {
    check_dims(rho, sigma)?;
    let sqrt_rho = sqrt_from_eigen(&hermitian_eigen(rho.matrix(), EIGEN_TOL)?)?;
    let inner = matmul(&matmul(&sqrt_rho, sigma.matrix())?, &sqrt_rho)?;
    let t = trace_sqrt(&hermitian_eigen(&inner, EIGEN_TOL)?)?;
    let raw = t * t;
    Ok(FidelityReport {
        value: clamp_fidelity(raw)?,
        raw_value: raw,
        method: FidelityMethod::Uhlmann,
        estimate: None,
        std_error: None,
        diagonalizations: 2,
        multiplications: 2,
    })
}

/// Route B: (Tr√(ρσ))².
///
/// With σ = L·L† from pivoted Cholesky, ρσ = ρLL† has the same non-zero
/// spectrum as the Hermitian L†ρL, so one Hermitian eigensolve suffices.
/// A rank-deficient σ gives a rectangular L and a smaller eigenproblem.
///
/// Rounding noise in ρ's own null space survives into L†ρL at the level of
/// ‖ρ‖·‖σ‖, not ‖L†ρL‖, so the zero cutoff is scaled by the inputs.
pub fn fidelity_product(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<FidelityReport> {
    check_dims(rho, sigma)?;
    let chol = pivoted_cholesky(sigma.matrix(), CHOLESKY_TOL)?;
    let l = chol.unpermuted_factor();
    let h = matmul(&l.adjoint(), &matmul(rho.matrix(), &l)?)?;
    let input_scale = rho.matrix().frobenius_norm() * sigma.matrix().frobenius_norm();
    let cut = null_cutoff(rho.dim(), input_scale);
    let t = trace_sqrt_above(&hermitian_eigen(&h, EIGEN_TOL)?, cut)?;
    let raw = t * t;
    Ok(FidelityReport {
        value: clamp_fidelity(raw)?,
        raw_value: raw,
        method: FidelityMethod::Product,
        estimate: None,
        std_error: None,
        diagonalizations: 1,
        multiplications: 2,
    })
}

/// Route D: (Tr√(ρσ))² from the closed-form Chebyshev series of √x.
///
/// ρσ is applied as σ then ρ on vectors and never formed. The interval end
/// b is a power-iteration bound on λ_max(ρσ), capped at 1. `probes = 0`
/// takes exact moments over the standard basis; otherwise a Hutchinson
/// estimate with that many probes is used.
///
/// The result is an estimate: truncation can push the raw value slightly
/// outside [0, 1], so `value` is always clamped and `raw_value` kept.
pub fn fidelity_cheb(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    degree: usize,
    probes: usize,
    rng: &mut SeededRng,
) -> Result<FidelityReport> {
    check_dims(rho, sigma)?;
    if degree < MIN_CHEB_DEGREE {
        return Err(Error::DegreeTooLow {
            degree,
            min: MIN_CHEB_DEGREE,
        });
    }
    if probes == 1 {
        return Err(Error::TooFewProbes(probes));
    }
    let op = ProductOperator {
        left: rho.matrix(),
        right: sigma.matrix(),
    };
    let b = spectral_bound(&op, BOUND_ITERS, rng).capped(1.0);
    let series = sqrt_coeffs_closed(b, degree)?;
    let est = if probes == 0 {
        trace_fn_exact_moments(&op, &series)
    } else {
        trace_fn_hutchinson(&op, &series, probes, rng)?
    };
    let raw = est.value * est.value;
    Ok(FidelityReport {
        value: raw.clamp(0.0, 1.0),
        raw_value: raw,
        method: FidelityMethod::Cheb,
        estimate: Some(est),
        std_error: Some(2.0 * est.value.abs() * est.std_error),
        diagonalizations: 0,
        multiplications: 0,
    })
}

/// Dispatch by method name; `degree`/`probes`/`rng` only matter for cheb.
pub fn fidelity(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    method: FidelityMethod,
    degree: usize,
    probes: usize,
    rng: &mut SeededRng,
) -> Result<FidelityReport> {
    match method {
        FidelityMethod::Uhlmann => fidelity_uhlmann(rho, sigma),
        FidelityMethod::Product => fidelity_product(rho, sigma),
        FidelityMethod::Cheb => fidelity_cheb(rho, sigma, degree, probes, rng),
    }
}

/// Truncation bound used to judge the cheb route: 3·dim·√b/(πN).
///
/// A zero eigenvalue of ρσ sits at the singular end of √x where the series
/// tail is 2√b/(π(2N+1)); squaring doubles it at most.
pub fn cheb_truncation_bound(dim: usize, b: f64, degree: usize) -> f64 {
    3.0 * dim as f64 * b.sqrt() / (std::f64::consts::PI * degree as f64)
}
