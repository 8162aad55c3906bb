use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, matmul, ComplexMatrix, C64, EIGEN_TOL};
use crate::states::rng::SeededRng;

/// Relative Hermiticity tolerance and absolute trace/PSD tolerance.
pub const DENSITY_TOL: f64 = 1e-10;

/// A validated quantum state: Hermitian, PSD, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// The maximally mixed state I/d.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    /// |ψ⟩⟨ψ| for a state vector, normalized here.
    pub fn from_pure(psi: &[C64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if psi.is_empty() || norm == 0.0 || !norm.is_finite() {
            return Err(Error::Parse("state vector must be non-zero and finite".into()));
        }
        let v: Vec<C64> = psi.iter().map(|z| z / norm).collect();
        Ok(Self {
            mat: ComplexMatrix::outer(&v, &v).symmetrized(),
        })
    }

    /// Tensor product ρ₁ ⊗ ρ₂.
    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            mat: self.mat.kron(&other.mat).symmetrized(),
        }
    }

    /// U·ρ·U† for a unitary U.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        let m = matmul(&matmul(u, &self.mat)?, &u.adjoint())?;
        validate_density(&m.symmetrized())
    }

    pub fn purity(&self) -> f64 {
        self.mat.trace_of_product(&self.mat).map(|t| t.re).unwrap_or(f64::NAN)
    }
}

/// Checks the three density-matrix invariants and wraps the matrix.
pub fn validate_density(m: &ComplexMatrix) -> Result<DensityMatrix> {
    if !m.is_square() {
        return Err(Error::DimMismatch("density matrix must be square".into()));
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let norm = m.frobenius_norm();
    let herm = m.hermitian_residual();
    if herm > DENSITY_TOL * norm {
        return Err(Error::NotHermitian {
            residual: herm,
            allowed: DENSITY_TOL * norm,
        });
    }
    let tr = m.trace();
    let tr_res = (tr - C64::new(1.0, 0.0)).norm();
    if tr_res > DENSITY_TOL {
        return Err(Error::NotUnitTrace { residual: tr_res });
    }
    let eig = hermitian_eigen(m, EIGEN_TOL)?;
    let min = eig.eigenvalues[0];
    if min < -DENSITY_TOL {
        return Err(Error::NotPsd { min_eigenvalue: min });
    }
    Ok(DensityMatrix { mat: m.symmetrized() })
}

/// What [`repair_density`] had to change.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RepairLog {
    pub hermitian_residual: f64,
    pub trace_before: f64,
    pub clamped_eigenvalues: usize,
}

/// Explicit repair of a nearly-valid state: symmetrize, clamp negative
/// eigenvalues to zero, renormalize the trace.
pub fn repair_density(m: &ComplexMatrix) -> Result<(DensityMatrix, RepairLog)> {
    if !m.is_square() {
        return Err(Error::DimMismatch("density matrix must be square".into()));
    }
    let hermitian_residual = m.hermitian_residual();
    let trace_before = m.trace().re;
    let eig = hermitian_eigen(&m.symmetrized(), EIGEN_TOL)?;
    let clamped_eigenvalues = eig.eigenvalues.iter().filter(|&&l| l < 0.0).count();
    let vals: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
    let total: f64 = vals.iter().sum();
    if total <= 0.0 {
        return Err(Error::NotPsd {
            min_eigenvalue: eig.eigenvalues[0],
        });
    }
    let vals: Vec<f64> = vals.iter().map(|l| l / total).collect();
    let fixed = eig.reconstruct_with(&vals);
    let tr = fixed.trace().re;
    let fixed = fixed.scale_real(1.0 / tr);
    let rho = validate_density(&fixed)?;
    Ok((
        rho,
        RepairLog {
            hermitian_residual,
            trace_before,
            clamped_eigenvalues,
        },
    ))
}

/// rows×cols matrix of independent standard complex Gaussians, drawn
/// row-major.
pub fn ginibre_matrix(rows: usize, cols: usize, rng: &mut SeededRng) -> ComplexMatrix {
    let mut g = ComplexMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            g[(i, j)] = rng.next_complex_gaussian();
        }
    }
    g
}

/// ρ = G·G†/Tr(G·G†) with G a dim×rank Ginibre matrix.
pub fn random_density_ginibre(dim: usize, rank: usize, rng: &mut SeededRng) -> Result<DensityMatrix> {
    if dim == 0 || rank == 0 || rank > dim {
        return Err(Error::BadRank { rank, dim });
    }
    let g = ginibre_matrix(dim, rank, rng);
    let ggh = matmul(&g, &g.adjoint())?;
    let tr = ggh.trace().re;
    let mut rho = ggh.scale_real(1.0 / tr).symmetrized();
    // Push the residual trace error into the last ulp.
    let t = rho.trace().re;
    if t != 1.0 {
        rho = rho.scale_real(1.0 / t);
    }
    validate_density(&rho)
}

/// |ψ⟩⟨ψ| with ψ a normalized complex Gaussian vector.
pub fn random_pure_state(dim: usize, rng: &mut SeededRng) -> DensityMatrix {
    let psi: Vec<C64> = (0..dim.max(1)).map(|_| rng.next_complex_gaussian()).collect();
    DensityMatrix::from_pure(&psi).expect("Gaussian vector is non-zero")
}

/// Haar-random unitary: Gram–Schmidt QR of a Ginibre matrix with the phase
/// of R's diagonal absorbed into Q.
pub fn random_unitary(dim: usize, rng: &mut SeededRng) -> ComplexMatrix {
    let g = ginibre_matrix(dim, dim, rng);
    let mut cols: Vec<Vec<C64>> = (0..dim).map(|j| g.column(j)).collect();
    for j in 0..dim {
        for k in 0..j {
            let (done, rest) = cols.split_at_mut(j);
            let qk = &done[k];
            let proj: C64 = qk.iter().zip(rest[0].iter()).map(|(a, b)| a.conj() * b).sum();
            for (x, q) in rest[0].iter_mut().zip(qk) {
                *x -= proj * q;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    let mut q = ComplexMatrix::zeros(dim, dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            q[(i, j)] = z;
        }
    }
    q
}

/// A discrete probability distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    probs: Vec<f64>,
}

impl ProbVector {
    pub const SUM_TOL: f64 = 1e-12;

    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::DimMismatch("probability vector is empty".into()));
        }
        if let Some(&bad) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::Parse(format!(
                "probabilities must be finite and non-negative (got {bad})"
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOL {
            return Err(Error::NotUnitTrace {
                residual: (sum - 1.0).abs(),
            });
        }
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}
