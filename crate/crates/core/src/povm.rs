//! Fidelity as a minimum over measurements.
//!
//! F(ρ,σ) = min over POVMs {E_j} of (Σ_j √(Tr ρE_j)·√(Tr σE_j))². Random
//! POVMs must never go below F, and the eigenbasis of the geometric-mean
//! observable attains it.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::func::sqrt_from_eigen;
use crate::linalg::{hermitian_eigen, matmul, ComplexMatrix, EIGEN_TOL};
use crate::measures::fidelity_uhlmann;
use crate::states::{ginibre_matrix, DensityMatrix, SeededRng};

/// Allowed negative eigenvalue of an element.
pub const POVM_PSD_TOL: f64 = 1e-10;
/// Allowed Frobenius residual of Σ_j E_j − I.
pub const POVM_COMPLETENESS_TOL: f64 = 1e-10;
/// Negative Tr ρE_j down to this level count as zero.
pub const OVERLAP_CLAMP: f64 = 1e-12;
/// Relative eigenvalue cutoff defining the support of ρ.
pub const SUPPORT_CUTOFF: f64 = 1e-10;
/// Attempts at drawing a non-singular frame operator.
pub const MAX_RESAMPLES: usize = 5;
/// S is singular when λ_min(S) falls below this fraction of λ_max(S).
const SINGULAR_RATIO: f64 = 1e-12;

/// A finite positive operator-valued measure.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    elements: Vec<ComplexMatrix>,
}

impl Povm {
    /// Validates positivity and completeness.
    pub fn new(elements: Vec<ComplexMatrix>) -> Result<Self> {
        let first = elements
            .first()
            .ok_or_else(|| Error::InvalidPovm("no elements".into()))?;
        let dim = first.rows();
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for (j, e) in elements.iter().enumerate() {
            if !e.is_square() || e.dim() != dim {
                return Err(Error::InvalidPovm(format!("element {j} is not {dim}×{dim}")));
            }
            if !e.is_finite() {
                return Err(Error::InvalidPovm(format!("element {j} has a non-finite entry")));
            }
            let eig = hermitian_eigen(e, EIGEN_TOL).map_err(|err| match err {
                Error::NotHermitian { residual, .. } => {
                    Error::InvalidPovm(format!("element {j} is not Hermitian (residual {residual:.3e})"))
                }
                other => other,
            })?;
            let min = eig.eigenvalues.first().copied().unwrap_or(0.0);
            if min < -POVM_PSD_TOL {
                return Err(Error::InvalidPovm(format!(
                    "element {j} is not positive semi-definite (min eigenvalue {min:.3e})"
                )));
            }
            sum = sum.add(e)?;
        }
        let residual = sum.sub(&ComplexMatrix::identity(dim))?.frobenius_norm();
        if residual > POVM_COMPLETENESS_TOL {
            return Err(Error::InvalidPovm(format!(
                "elements sum to identity only within {residual:.3e}"
            )));
        }
        Ok(Self { elements })
    }

    /// The single-outcome measurement {I}.
    pub fn trivial(dim: usize) -> Self {
        Self {
            elements: vec![ComplexMatrix::identity(dim)],
        }
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements[0].rows()
    }

    pub fn outcomes(&self) -> usize {
        self.elements.len()
    }

    /// ‖Σ_j E_j − I‖_F.
    pub fn completeness_residual(&self) -> f64 {
        let dim = self.dim();
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for e in &self.elements {
            sum = sum.add(e).expect("elements share a shape");
        }
        sum.sub(&ComplexMatrix::identity(dim)).expect("square").frobenius_norm()
    }
}

fn outcome_probability(state: &DensityMatrix, e: &ComplexMatrix, j: usize) -> Result<f64> {
    let p = state.matrix().trace_of_product(e)?.re;
    if p < -OVERLAP_CLAMP {
        return Err(Error::InvalidPovm(format!("outcome {j} has probability {p:.3e}")));
    }
    Ok(p.max(0.0))
}

/// (Σ_j √(Tr ρE_j)·√(Tr σE_j))², the squared classical overlap of the
/// outcome distributions.
pub fn povm_overlap(rho: &DensityMatrix, sigma: &DensityMatrix, povm: &Povm) -> Result<f64> {
    if rho.dim() != sigma.dim() || rho.dim() != povm.dim() {
        return Err(Error::DimMismatch(format!(
            "ρ is {}-dimensional, σ {}, POVM {}",
            rho.dim(),
            sigma.dim(),
            povm.dim()
        )));
    }
    let mut bc = 0.0;
    for (j, e) in povm.elements().iter().enumerate() {
        bc += (outcome_probability(rho, e, j)? * outcome_probability(sigma, e, j)?).sqrt();
    }
    Ok(bc * bc)
}

/// E_j = S^{−1/2}·G_jG_j†·S^{−1/2} with S = Σ_j G_jG_j† and G_j square
/// Ginibre matrices.
pub fn random_povm(dim: usize, outcomes: usize, rng: &mut SeededRng) -> Result<Povm> {
    if dim == 0 {
        return Err(Error::InvalidPovm("dimension must be at least 1".into()));
    }
    if outcomes == 0 {
        return Err(Error::InvalidPovm("at least one outcome is required".into()));
    }
    if outcomes == 1 {
        return Ok(Povm::trivial(dim));
    }
    for _ in 0..MAX_RESAMPLES {
        let grams: Vec<ComplexMatrix> = (0..outcomes)
            .map(|_| {
                let g = ginibre_matrix(dim, dim, rng);
                matmul(&g, &g.adjoint()).map(|m| m.symmetrized())
            })
            .collect::<Result<_>>()?;
        let mut s = ComplexMatrix::zeros(dim, dim);
        for g in &grams {
            s = s.add(g)?;
        }
        let eig = hermitian_eigen(&s, EIGEN_TOL)?;
        let max = eig.max_abs_eigenvalue();
        if eig.eigenvalues[0] <= SINGULAR_RATIO * max {
            continue;
        }
        let inv_sqrt = eig.reconstruct_with(&eig.eigenvalues.iter().map(|l| l.powf(-0.5)).collect::<Vec<_>>());
        let elements = grams
            .iter()
            .map(|g| Ok(matmul(&matmul(&inv_sqrt, g)?, &inv_sqrt)?.symmetrized()))
            .collect::<Result<Vec<_>>>()?;
        return Povm::new(elements);
    }
    Err(Error::DegenerateSample(MAX_RESAMPLES))
}

/// Rank-1 projectors onto the eigenbasis of
/// M = ρ^{−1/2}·√(√ρσ√ρ)·ρ^{−1/2}.
///
/// ρ^{−1/2} is taken on the support of ρ (eigenvalues above 1e-10·λ_max).
/// M is diagonalized within that support and, when ρ is rank-deficient,
/// the projector onto its kernel is appended as one more outcome.
pub fn optimal_povm(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<Povm> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch(format!(
            "ρ is {}-dimensional, σ is {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    let dim = rho.dim();
    let eig = hermitian_eigen(rho.matrix(), EIGEN_TOL)?;
    let cut = SUPPORT_CUTOFF * eig.max_abs_eigenvalue();
    let support: Vec<usize> = (0..dim).filter(|&k| eig.eigenvalues[k] > cut).collect();
    if support.is_empty() {
        return Err(Error::SingularRho);
    }

    let inv_sqrt_vals: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&l| if l > cut { l.powf(-0.5) } else { 0.0 })
        .collect();
    let inv_sqrt = eig.reconstruct_with(&inv_sqrt_vals);
    let sqrt_rho = sqrt_from_eigen(&eig)?;
    let inner = matmul(&matmul(&sqrt_rho, sigma.matrix())?, &sqrt_rho)?.symmetrized();
    let geo = sqrt_from_eigen(&hermitian_eigen(&inner, EIGEN_TOL)?)?;
    let m = matmul(&matmul(&inv_sqrt, &geo)?, &inv_sqrt)?;

    let vs = eig.eigenvectors.select_columns(&support);
    let restricted = matmul(&vs.adjoint(), &matmul(&m, &vs)?)?.symmetrized();
    let basis = matmul(&vs, &hermitian_eigen(&restricted, EIGEN_TOL)?.eigenvectors)?;

    let mut elements = Vec::with_capacity(support.len() + 1);
    for k in 0..basis.cols() {
        let v = basis.column(k);
        elements.push(ComplexMatrix::outer(&v, &v));
    }
    if support.len() < dim {
        let range_proj = matmul(&vs, &vs.adjoint())?;
        elements.push(ComplexMatrix::identity(dim).sub(&range_proj)?.symmetrized());
    }
    Povm::new(elements)
}

/// Summary of sampled overlaps against the optimal one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimizationEvidence {
    pub samples: usize,
    /// None when `samples` is 0.
    pub min: Option<f64>,
    pub max: Option<f64>,
    /// Overlap attained by [`optimal_povm`].
    pub optimal: f64,
    /// Reference fidelity from the Uhlmann route.
    pub fidelity: f64,
    /// Smallest sampled overlap minus the fidelity; negative beyond
    /// rounding means the minimization property failed.
    pub min_gap: Option<f64>,
}

/// Overlaps of `samples` random POVMs with between 2 and 2·dim outcomes,
/// next to the optimal POVM and the fidelity.
///
/// Sample k draws from `SeededRng::derive(base, k)` with one base seed taken
/// from `rng`, so the result does not depend on scheduling.
pub fn minimization_evidence(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    samples: usize,
    rng: &mut SeededRng,
) -> Result<MinimizationEvidence> {
    let fidelity = fidelity_uhlmann(rho, sigma)?.value;
    let optimal = povm_overlap(rho, sigma, &optimal_povm(rho, sigma)?)?;
    let dim = rho.dim();
    let base = rng.next_u64();
    let values: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut r = SeededRng::derive(base, k as u64);
            let outcomes = r.next_range(2, 2 * dim.max(1));
            povm_overlap(rho, sigma, &random_povm(dim, outcomes, &mut r)?)
        })
        .collect::<Result<_>>()?;
    let min = values.iter().copied().reduce(f64::min);
    let max = values.iter().copied().reduce(f64::max);
    Ok(MinimizationEvidence {
        samples,
        min,
        max,
        optimal,
        fidelity,
        min_gap: min.map(|m| m - fidelity),
    })
}
