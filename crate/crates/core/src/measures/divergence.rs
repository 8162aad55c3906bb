//! Rényi-family divergences (natural log throughout).
//!
//! All four quantities are built from spectral calculus on Hermitian
//! matrices. Support violations (ρ carrying weight where σ vanishes, for
//! orders that need σ⁻¹, or a zero overlap for orders below 1) produce a
//! flagged `+∞` rather than an error so parameter sweeps keep going.

use crate::error::{Error, Result};
use crate::linalg::func::{clamped_psd_eigenvalues, null_cutoff, support_powers};
use crate::linalg::{hermitian_eigen, matmul, HermitianEigen, EIGEN_TOL};
use crate::states::DensityMatrix;

/// Weight of ρ on ker σ above which the support condition is violated.
pub const SUPPORT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Divergence {
    /// Nats; `f64::INFINITY` when `support_violation` is set.
    pub value: f64,
    pub support_violation: bool,
    pub diagonalizations: usize,
    pub multiplications: usize,
}

impl Divergence {
    fn finite(value: f64, diagonalizations: usize, multiplications: usize) -> Self {
        Self {
            value,
            support_violation: false,
            diagonalizations,
            multiplications,
        }
    }

    fn infinite(diagonalizations: usize, multiplications: usize) -> Self {
        Self {
            value: f64::INFINITY,
            support_violation: true,
            diagonalizations,
            multiplications,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0) || alpha == 1.0 {
        return Err(Error::BadAlpha(alpha));
    }
    Ok(())
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

/// Indices of eigenvalues at the numerical-zero level.
fn kernel_indices(eig: &HermitianEigen) -> Vec<usize> {
    let cut = null_cutoff(eig.dim(), eig.max_abs_eigenvalue());
    eig.eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &l)| l <= cut)
        .map(|(i, _)| i)
        .collect()
}

/// ⟨u_i|ρ|u_i⟩ for each eigenvector u_i of σ, from W = U†V and the
/// eigenvalues d of ρ: Σ_k |W_ik|²·d_k.
fn rho_diag_in_basis(w: &crate::linalg::ComplexMatrix, rho_vals: &[f64]) -> Vec<f64> {
    (0..w.rows())
        .map(|i| w.row(i).iter().zip(rho_vals).map(|(x, d)| x.norm_sqr() * d).sum())
        .collect()
}

fn weight_on_kernel(sigma: &HermitianEigen, diag: &[f64]) -> f64 {
    kernel_indices(sigma).iter().map(|&i| diag[i]).sum()
}

fn log_ratio(trace: f64, alpha: f64, diags: usize, mults: usize) -> Divergence {
    if trace > 0.0 && trace.is_finite() {
        Divergence::finite(trace.ln() / (alpha - 1.0), diags, mults)
    } else {
        Divergence::infinite(diags, mults)
    }
}

/// D_α(ρ‖σ) = log Tr(ρ^α σ^{1−α}) / (α − 1).
pub fn renyi_divergence(rho: &DensityMatrix, sigma: &DensityMatrix, alpha: f64) -> Result<Divergence> {
    check_alpha(alpha)?;
    check_dims(rho, sigma)?;
    let er = hermitian_eigen(rho.matrix(), EIGEN_TOL)?;
    let es = hermitian_eigen(sigma.matrix(), EIGEN_TOL)?;
    if alpha > 1.0 {
        let w = matmul(&es.eigenvectors.adjoint(), &er.eigenvectors)?;
        let rv = clamped_psd_eigenvalues(&er)?;
        if weight_on_kernel(&es, &rho_diag_in_basis(&w, &rv)) > SUPPORT_TOL {
            return Ok(Divergence::infinite(2, 1));
        }
    }
    let a = er.reconstruct_with(&support_powers(&er, alpha)?);
    let b = es.reconstruct_with(&support_powers(&es, 1.0 - alpha)?);
    let t = a.trace_of_product(&b)?.re;
    Ok(log_ratio(t, alpha, 2, 0))
}

/// D̃_α(ρ‖σ) = log Tr[(σ^c ρ σ^c)^α] / (α − 1), c = (1 − α)/(2α).
pub fn sandwiched_renyi(rho: &DensityMatrix, sigma: &DensityMatrix, alpha: f64) -> Result<Divergence> {
    check_alpha(alpha)?;
    check_dims(rho, sigma)?;
    let es = hermitian_eigen(sigma.matrix(), EIGEN_TOL)?;
    if alpha > 1.0 {
        let diag: Vec<f64> = (0..es.dim())
            .map(|i| {
                let u = es.eigenvectors.column(i);
                quad_form(rho, &u)
            })
            .collect();
        if weight_on_kernel(&es, &diag) > SUPPORT_TOL {
            return Ok(Divergence::infinite(1, 0));
        }
    }
    let c = (1.0 - alpha) / (2.0 * alpha);
    let s = es.reconstruct_with(&support_powers(&es, c)?);
    let h = matmul(&matmul(&s, rho.matrix())?, &s)?;
    let eh = hermitian_eigen(&h, EIGEN_TOL)?;
    let t: f64 = support_powers(&eh, alpha)?.iter().sum();
    Ok(log_ratio(t, alpha, 2, 2))
}

fn quad_form(rho: &DensityMatrix, u: &[crate::linalg::C64]) -> f64 {
    let m = rho.matrix();
    let mut acc = 0.0;
    for (i, ui) in u.iter().enumerate() {
        let row: crate::linalg::C64 = m.row(i).iter().zip(u).map(|(a, b)| a * b).sum();
        acc += (ui.conj() * row).re;
    }
    acc
}

/// D_{α,z}(ρ‖σ) = log Tr[(σ^{(1−α)/z} ρ^{α/z})^z] / (α − 1), the form with
/// the two outer σ factors merged.
///
/// The eigenvalues of σ^p ρ^q (p = (1−α)/z, q = α/z) are obtained from the
/// Hermitian Λ^{p/2}·(U†ρ^qU)·Λ^{p/2}, where σ = UΛU†. Writing ρ = VDV†,
/// U†ρ^qU = W·D^q·W† with W = U†V, so the only explicit product between
/// the two operators is W. Compare [`alpha_z_divergence_three_factor`].
pub fn alpha_z_divergence(rho: &DensityMatrix, sigma: &DensityMatrix, alpha: f64, z: f64) -> Result<Divergence> {
    check_alpha(alpha)?;
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::BadZ(z));
    }
    check_dims(rho, sigma)?;
    let es = hermitian_eigen(sigma.matrix(), EIGEN_TOL)?;
    let er = hermitian_eigen(rho.matrix(), EIGEN_TOL)?;
    let w = matmul(&es.eigenvectors.adjoint(), &er.eigenvectors)?;
    if alpha > 1.0 {
        let rv = clamped_psd_eigenvalues(&er)?;
        if weight_on_kernel(&es, &rho_diag_in_basis(&w, &rv)) > SUPPORT_TOL {
            return Ok(Divergence::infinite(2, 1));
        }
    }
    let p = (1.0 - alpha) / z;
    let q = alpha / z;
    // ρ^q expressed in σ's eigenbasis.
    let in_sigma_basis = HermitianEigen {
        eigenvalues: er.eigenvalues.clone(),
        eigenvectors: w,
    };
    let mut h = in_sigma_basis.reconstruct_with(&support_powers(&er, q)?);
    let half = support_powers(&es, 0.5 * p)?;
    let n = h.dim();
    for i in 0..n {
        for j in 0..n {
            h[(i, j)] *= half[i] * half[j];
        }
    }
    let eh = hermitian_eigen(&h, EIGEN_TOL)?;
    let t: f64 = support_powers(&eh, z)?.iter().sum();
    Ok(log_ratio(t, alpha, 3, 1))
}

/// D_{α,z} from its literal three-factor definition
/// Tr[(σ^{p/2} ρ^q σ^{p/2})^z]; two explicit products.
pub fn alpha_z_divergence_three_factor(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    alpha: f64,
    z: f64,
) -> Result<Divergence> {
    check_alpha(alpha)?;
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::BadZ(z));
    }
    check_dims(rho, sigma)?;
    let es = hermitian_eigen(sigma.matrix(), EIGEN_TOL)?;
    let er = hermitian_eigen(rho.matrix(), EIGEN_TOL)?;
    if alpha > 1.0 {
        let diag: Vec<f64> = (0..es.dim())
            .map(|i| quad_form(rho, &es.eigenvectors.column(i)))
            .collect();
        if weight_on_kernel(&es, &diag) > SUPPORT_TOL {
            return Ok(Divergence::infinite(2, 0));
        }
    }
    let p = (1.0 - alpha) / z;
    let q = alpha / z;
    let s = es.reconstruct_with(&support_powers(&es, 0.5 * p)?);
    let r = er.reconstruct_with(&support_powers(&er, q)?);
    let h = matmul(&matmul(&s, &r)?, &s)?;
    let eh = hermitian_eigen(&h, EIGEN_TOL)?;
    let t: f64 = support_powers(&eh, z)?.iter().sum();
    Ok(log_ratio(t, alpha, 3, 2))
}

/// D(ρ‖σ) = Tr ρ(log ρ − log σ), restricted to supports.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<Divergence> {
    check_dims(rho, sigma)?;
    let er = hermitian_eigen(rho.matrix(), EIGEN_TOL)?;
    let es = hermitian_eigen(sigma.matrix(), EIGEN_TOL)?;
    let rv = clamped_psd_eigenvalues(&er)?;
    let sv = clamped_psd_eigenvalues(&es)?;
    let w = matmul(&es.eigenvectors.adjoint(), &er.eigenvectors)?;
    let diag = rho_diag_in_basis(&w, &rv);
    if weight_on_kernel(&es, &diag) > SUPPORT_TOL {
        return Ok(Divergence::infinite(2, 1));
    }
    let rcut = null_cutoff(er.dim(), er.max_abs_eigenvalue());
    let neg_entropy: f64 = rv.iter().filter(|&&l| l > rcut).map(|l| l * l.ln()).sum();
    let kernel = kernel_indices(&es);
    let cross: f64 = sv
        .iter()
        .enumerate()
        .filter(|(i, _)| !kernel.contains(i))
        .map(|(i, s)| diag[i] * s.ln())
        .sum();
    Ok(Divergence::finite(neg_entropy - cross, 2, 1))
}
