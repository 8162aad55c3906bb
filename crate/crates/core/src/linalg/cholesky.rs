//! Rank-revealing pivoted Cholesky for positive semi-definite matrices.

use crate::error::{Error, Result};
use crate::linalg::matrix::{ComplexMatrix, C64};

/// P·M·Pᵀ = L·L† with L of shape dim×rank.
///
/// `permutation[k]` is the original index placed at position k, so
/// (P·M·Pᵀ)[i][j] = M[permutation[i]][permutation[j]].
#[derive(Debug, Clone)]
pub struct CholeskyFactor {
    pub rank: usize,
    pub factor: ComplexMatrix,
    pub permutation: Vec<usize>,
}

impl CholeskyFactor {
    /// The factor with rows returned to the original ordering, so that
    /// M = L·L† directly.
    pub fn unpermuted_factor(&self) -> ComplexMatrix {
        let n = self.factor.rows();
        let mut out = ComplexMatrix::zeros(n, self.rank.max(1));
        for (k, &orig) in self.permutation.iter().enumerate() {
            for j in 0..self.rank {
                out[(orig, j)] = self.factor[(k, j)];
            }
        }
        out
    }

    /// P·M·Pᵀ for an arbitrary matrix of matching size.
    pub fn permute(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let n = self.permutation.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = m[(self.permutation[i], self.permutation[j])];
            }
        }
        out
    }
}

/// Diagonal-pivoted outer-product Cholesky.
///
/// Factorization stops once the largest remaining pivot is at most
/// `tol·(largest initial pivot)`; the number of completed steps is the rank.
/// A pivot below `−tol·(largest initial pivot)` means M is not PSD.
pub fn pivoted_cholesky(m: &ComplexMatrix, tol: f64) -> Result<CholeskyFactor> {
    if !m.is_square() {
        return Err(Error::DimMismatch("Cholesky needs a square matrix".into()));
    }
    let n = m.dim();
    let mut work = m.symmetrized();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut l = ComplexMatrix::zeros(n, n);

    let max0 = (0..n).map(|i| work[(i, i)].re).fold(f64::NEG_INFINITY, f64::max);
    let scale = max0.max(0.0);
    let mut rank = 0;

    for k in 0..n {
        let (piv, pval) =
            (k..n).map(|i| (i, work[(i, i)].re)).fold(
                (k, f64::NEG_INFINITY),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        if pval <= tol * scale {
            // Remaining diagonal must still be PSD-consistent.
            let min_rest = (k..n).map(|i| work[(i, i)].re).fold(f64::INFINITY, f64::min);
            if min_rest < -tol * scale {
                return Err(Error::NotPsd {
                    min_eigenvalue: min_rest,
                });
            }
            break;
        }
        if piv != k {
            swap_symmetric(&mut work, k, piv);
            perm.swap(k, piv);
            for j in 0..k {
                let tmp = l[(k, j)];
                l[(k, j)] = l[(piv, j)];
                l[(piv, j)] = tmp;
            }
        }
        let d = pval.sqrt();
        l[(k, k)] = C64::new(d, 0.0);
        for i in (k + 1)..n {
            l[(i, k)] = work[(i, k)] / d;
        }
        for i in (k + 1)..n {
            let lik = l[(i, k)];
            for j in (k + 1)..=i {
                let upd = work[(i, j)] - lik * l[(j, k)].conj();
                work[(i, j)] = upd;
                work[(j, i)] = upd.conj();
            }
            work[(i, i)].im = 0.0;
        }
        rank += 1;
    }

    let cols: Vec<usize> = (0..rank.max(1)).collect();
    Ok(CholeskyFactor {
        rank,
        factor: l.select_columns(&cols),
        permutation: perm,
    })
}

fn swap_symmetric(a: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.dim();
    for j in 0..n {
        let tmp = a[(p, j)];
        a[(p, j)] = a[(q, j)];
        a[(q, j)] = tmp;
    }
    for i in 0..n {
        let tmp = a[(i, p)];
        a[(i, p)] = a[(i, q)];
        a[(i, q)] = tmp;
    }
}
