//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use crate::error::{Error, Result};
use crate::linalg::matrix::{ComplexMatrix, C64};

/// Default convergence tolerance, relative to ‖M‖_F.
pub const EIGEN_TOL: f64 = 1e-14;

/// Relative Hermiticity residual above which input is rejected outright.
const HERMITIAN_REJECT: f64 = 1e-6;

/// Sweeps allowed per unit of dimension.
const SWEEPS_PER_DIM: usize = 30;

/// Eigendecomposition M = V·diag(λ)·V† with λ ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    /// Unitary; column k is the eigenvector for `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0_f64, |m, &l| m.max(l.abs()))
    }

    /// V·diag(values)·V†.
    pub fn reconstruct_with(&self, values: &[f64]) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut acc = C64::new(0.0, 0.0);
                for (k, &lk) in values.iter().enumerate() {
                    if lk != 0.0 {
                        acc += v[(i, k)] * v[(j, k)].conj() * lk;
                    }
                }
                if i == j {
                    out[(i, i)] = C64::new(acc.re, 0.0);
                } else {
                    out[(i, j)] = acc;
                    out[(j, i)] = acc.conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(&self.eigenvalues)
    }
}

/// Diagonalizes a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// The input is symmetrized first. Iteration stops once the off-diagonal
/// Frobenius norm is at most `tol·‖M‖_F`; the sweep budget is `30·dim`.
/// Output is a pure function of the input bytes.
pub fn hermitian_eigen(m: &ComplexMatrix, tol: f64) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(Error::DimMismatch("eigendecomposition needs a square matrix".into()));
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = m.dim();
    let norm = m.frobenius_norm();
    let residual = m.hermitian_residual();
    if residual > HERMITIAN_REJECT * norm {
        return Err(Error::NotHermitian {
            residual,
            allowed: HERMITIAN_REJECT * norm,
        });
    }

    let mut a = m.symmetrized();
    let mut v = ComplexMatrix::identity(n);
    let target = tol * norm;
    let max_sweeps = SWEEPS_PER_DIM * n.max(1);

    let mut off = off_diagonal_norm(&a);
    let mut sweeps = 0;
    while off > target {
        if sweeps == max_sweeps {
            return Err(Error::NonConvergence { sweeps, off_norm: off });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&a);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re).then(i.cmp(&j)));
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let eigenvectors = v.select_columns(&order);
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Annihilates a[p][q] with the unitary J = diag(1, e^{-iφ})·R(θ) acting on
/// the (p, q) plane, where φ = arg a[p][q]: A ← J†AJ, V ← VJ.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Rotation is numerically a no-op: the entry is below the diagonal's ulp.
    if r < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = C64::new(0.0, 0.0);
        a[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let phase = apq / r;
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let ph = phase.conj();
    let j_pp = C64::new(c, 0.0);
    let j_pq = C64::new(s, 0.0);
    let j_qp = ph * (-s);
    let j_qq = ph * c;

    let n = a.dim();
    // A ← A·J (columns p, q)
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
    }
    // A ← J†·A (rows p, q)
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(app - t * r, 0.0);
    a[(q, q)] = C64::new(aqq + t * r, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::matmul;

    fn unitarity_residual(v: &ComplexMatrix) -> f64 {
        let vv = matmul(&v.adjoint(), v).unwrap();
        vv.sub(&ComplexMatrix::identity(v.dim())).unwrap().frobenius_norm()
    }

    #[test]
    fn identity_spectrum() {
        let e = hermitian_eigen(&ComplexMatrix::identity(3), EIGEN_TOL).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 1.0, 1.0]);
        assert!(unitarity_residual(&e.eigenvectors) < 1e-14);
    }

    #[test]
    fn diagonal_is_sorted() {
        let e = hermitian_eigen(&ComplexMatrix::from_diag(&[3.0, 1.0, 2.0]), EIGEN_TOL).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let x = ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let e = hermitian_eigen(&x, EIGEN_TOL).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn complex_phase_entries() {
        // Pauli-Y has eigenvalues ±1 with purely imaginary off-diagonals.
        let y = ComplexMatrix::from_row_major(
            2,
            2,
            vec![
                C64::new(0.0, 0.0),
                C64::new(0.0, -1.0),
                C64::new(0.0, 1.0),
                C64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let e = hermitian_eigen(&y, EIGEN_TOL).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-15);
        let rec = e.reconstruct().sub(&y).unwrap().frobenius_norm();
        assert!(rec < 1e-14, "reconstruction residual {rec}");
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            hermitian_eigen(&m, EIGEN_TOL),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn impossible_tolerance_reports_non_convergence() {
        let m = ComplexMatrix::from_real(3, &[2.0, 1.0, 0.5, 1.0, 3.0, 0.25, 0.5, 0.25, 1.0]).unwrap();
        assert!(matches!(hermitian_eigen(&m, -1.0), Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn deterministic_bytes() {
        let m = ComplexMatrix::from_row_major(
            3,
            3,
            vec![
                C64::new(2.0, 0.0),
                C64::new(0.3, 0.7),
                C64::new(-1.0, 0.2),
                C64::new(0.3, -0.7),
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.4),
                C64::new(-1.0, -0.2),
                C64::new(0.0, -0.4),
                C64::new(-0.5, 0.0),
            ],
        )
        .unwrap();
        let a = hermitian_eigen(&m, EIGEN_TOL).unwrap();
        let b = hermitian_eigen(&m, EIGEN_TOL).unwrap();
        assert_eq!(a.eigenvalues, b.eigenvalues);
        assert_eq!(a.eigenvectors, b.eigenvectors);
    }
}
