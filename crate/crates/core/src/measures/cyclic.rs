//! Tr f(ABC) = Tr f(CAB) = Tr f(BCA) for polynomial f.

use crate::error::{Error, Result};
use crate::linalg::{matmul, ComplexMatrix, C64};

/// Degree cap that keeps rounding in the matrix powers controlled.
pub const MAX_CYCLIC_DEGREE: usize = 12;

/// Traces of f applied to the three cyclic orderings of a product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CyclicTraces {
    pub abc: C64,
    pub cab: C64,
    pub bca: C64,
}

impl CyclicTraces {
    /// Largest pairwise gap between the three orderings.
    pub fn max_gap(&self) -> f64 {
        (self.abc - self.cab)
            .norm()
            .max((self.abc - self.bca).norm())
            .max((self.cab - self.bca).norm())
    }
}

/// Tr Σ_j c_j X^j, by Horner's rule on matrices.
pub fn trace_poly(x: &ComplexMatrix, coeffs: &[f64]) -> Result<C64> {
    if coeffs.is_empty() {
        return Ok(C64::new(0.0, 0.0));
    }
    let n = x.dim();
    let id = ComplexMatrix::identity(n);
    let mut acc = id.scale_real(*coeffs.last().unwrap());
    for &c in coeffs.iter().rev().skip(1) {
        acc = matmul(&acc, x)?.add(&id.scale_real(c))?;
    }
    Ok(acc.trace())
}

fn check(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, coeffs: &[f64]) -> Result<()> {
    let n = a.dim();
    for m in [a, b, c] {
        if !m.is_square() || m.dim() != n {
            return Err(Error::DimMismatch("A, B, C must be square of equal size".into()));
        }
    }
    if coeffs.len() > MAX_CYCLIC_DEGREE + 1 {
        return Err(Error::DegreeTooHigh {
            degree: coeffs.len() - 1,
            max: MAX_CYCLIC_DEGREE,
        });
    }
    Ok(())
}

/// (Tr f(ABC), Tr f(CAB)) for f(x) = Σ_j c_j x^j.
///
/// Traces of products of complex matrices are complex in general, so both
/// sides are returned as complex numbers.
pub fn trace_fn_cyclic_check(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    coeffs: &[f64],
) -> Result<(C64, C64)> {
    let t = cyclic_traces(a, b, c, coeffs)?;
    Ok((t.abc, t.cab))
}

/// All three cyclic orderings.
pub fn cyclic_traces(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, coeffs: &[f64]) -> Result<CyclicTraces> {
    check(a, b, c, coeffs)?;
    let abc = matmul(&matmul(a, b)?, c)?;
    let cab = matmul(&matmul(c, a)?, b)?;
    let bca = matmul(&matmul(b, c)?, a)?;
    Ok(CyclicTraces {
        abc: trace_poly(&abc, coeffs)?,
        cab: trace_poly(&cab, coeffs)?,
        bca: trace_poly(&bca, coeffs)?,
    })
}

/// Magnitude scale for relative comparisons: dim·Σ_j |c_j|·(‖A‖‖B‖‖C‖)^j
/// with Frobenius norms, an upper bound on |Tr f(ABC)|.
pub fn cyclic_scale(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, coeffs: &[f64]) -> f64 {
    let r = a.frobenius_norm() * b.frobenius_norm() * c.frobenius_norm();
    let mut pow = 1.0;
    let mut s = 0.0;
    for &cj in coeffs {
        s += cj.abs() * pow;
        pow *= r;
    }
    a.dim() as f64 * s
}
