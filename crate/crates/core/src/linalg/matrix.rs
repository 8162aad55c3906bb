use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Dense complex matrix stored row-major.
///
/// Most of the crate works with square matrices; rectangular shapes appear
/// only for Cholesky factors and basis blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting shape errors and
    /// non-finite values.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimMismatch("matrix dimensions must be at least 1".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::DimMismatch(format!(
                "expected {} entries for a {rows}×{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    /// Square matrix from real entries, row-major.
    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self> {
        Self::from_row_major(dim, dim, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Outer product |u⟩⟨v|.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        let mut m = Self::zeros(u.len(), v.len());
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                m[(i, j)] = ui * vj.conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix (the row count otherwise).
    pub fn dim(&self) -> usize {
        self.rows
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Trace, summed in index order.
    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .fold(ZERO, |acc, z| acc + z)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimMismatch(format!(
                "{}×{} vs {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// ‖M − M†‖_F for a square matrix.
    pub fn hermitian_residual(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// (M + M†)/2 with an exactly real diagonal.
    pub fn symmetrized(&self) -> Self {
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            out[(i, i)] = C64::new(self[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let v = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                out[(i, j)] = v;
                out[(j, i)] = v.conj();
            }
        }
        out
    }

    /// Scales column `j` by `s`.
    pub fn scale_columns(&self, s: &[f64]) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            for (j, &sj) in s.iter().enumerate() {
                out[(i, j)] *= sj;
            }
        }
        out
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out[(i, k)] = self[(i, j)];
            }
        }
        out
    }

    /// Kronecker (tensor) product.
    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Tr(A·B) without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> Result<C64> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::DimMismatch("trace of product needs A: m×n, B: n×m".into()));
        }
        let mut acc = ZERO;
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        Ok(acc)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Matrix product A·B.
///
/// Summation runs i-k-j with k ascending, so every output entry is
/// accumulated in the same order on every call.
pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimMismatch(format!(
            "cannot multiply {}×{} by {}×{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = ComplexMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        let out_row = &mut out.data[i * b.cols..(i + 1) * b.cols];
        for k in 0..a.cols {
            let aik = a.data[i * a.cols + k];
            let b_row = &b.data[k * b.cols..(k + 1) * b.cols];
            for (o, &bkj) in out_row.iter_mut().zip(b_row) {
                *o += aik * bkj;
            }
        }
    }
    Ok(out)
}

/// Matrix-vector product M·v.
pub fn apply(m: &ComplexMatrix, v: &[C64]) -> Result<Vec<C64>> {
    if v.len() != m.cols {
        return Err(Error::DimMismatch(format!(
            "vector of length {} against {}×{} matrix",
            v.len(),
            m.rows,
            m.cols
        )));
    }
    let mut out = vec![ZERO; m.rows];
    apply_into(m, v, &mut out);
    Ok(out)
}

/// Unchecked kernel behind [`apply`]; `out` is overwritten.
#[inline]
pub(crate) fn apply_into(m: &ComplexMatrix, v: &[C64], out: &mut [C64]) {
    for (i, o) in out.iter_mut().enumerate() {
        let row = m.row(i);
        *o = row.iter().zip(v).fold(ZERO, |acc, (a, b)| acc + a * b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    #[test]
    fn matmul_identity_is_neutral() {
        let m = ComplexMatrix::from_row_major(
            2,
            2,
            vec![
                C64::new(1.0, 2.0),
                C64::new(-1.0, 0.5),
                C64::new(0.0, 3.0),
                C64::new(4.0, 0.0),
            ],
        )
        .unwrap();
        assert_eq!(matmul(&ComplexMatrix::identity(2), &m).unwrap(), m);
    }

    #[test]
    fn matmul_examples() {
        let a = ComplexMatrix::from_diag(&[2.0]);
        let b = ComplexMatrix::from_diag(&[3.0]);
        assert_eq!(matmul(&a, &b).unwrap(), ComplexMatrix::from_diag(&[6.0]));
        assert_eq!(matmul(&pauli_x(), &pauli_x()).unwrap(), ComplexMatrix::identity(2));
    }

    #[test]
    fn matmul_rejects_bad_shapes() {
        let a = ComplexMatrix::zeros(2, 3);
        assert!(matches!(matmul(&a, &a), Err(Error::DimMismatch(_))));
    }

    #[test]
    fn apply_examples() {
        let v = vec![C64::new(1.0, -1.0), C64::new(0.5, 2.0)];
        assert_eq!(apply(&ComplexMatrix::identity(2), &v).unwrap(), v);
        let d = ComplexMatrix::from_diag(&[2.0, 3.0]);
        assert_eq!(
            apply(&d, &[ONE, ONE]).unwrap(),
            vec![C64::new(2.0, 0.0), C64::new(3.0, 0.0)]
        );
        assert_eq!(apply(&pauli_x(), &[ONE, ZERO]).unwrap(), vec![ZERO, ONE]);
        assert!(apply(&d, &[ONE]).is_err());
    }

    #[test]
    fn from_row_major_rejects_nan() {
        let r = ComplexMatrix::from_row_major(1, 1, vec![C64::new(f64::NAN, 0.0)]);
        assert!(matches!(r, Err(Error::NonFinite)));
    }

    #[test]
    fn kron_dims_and_trace() {
        let a = ComplexMatrix::from_diag(&[1.0, 2.0]);
        let b = ComplexMatrix::from_diag(&[3.0, 4.0, 5.0]);
        let k = a.kron(&b);
        assert_eq!(k.rows(), 6);
        assert_eq!(k.trace(), C64::new(36.0, 0.0));
    }

    #[test]
    fn trace_of_product_matches_matmul() {
        let a = ComplexMatrix::from_row_major(
            2,
            2,
            vec![
                C64::new(1.0, 1.0),
                C64::new(2.0, 0.0),
                C64::new(0.0, -1.0),
                C64::new(3.0, 0.5),
            ],
        )
        .unwrap();
        let t = a.trace_of_product(&pauli_x()).unwrap();
        assert_eq!(t, matmul(&a, &pauli_x()).unwrap().trace());
    }
}
