use crate::linalg::matrix::{apply_into, ComplexMatrix, C64};

/// Something that can be applied to a vector without exposing its entries.
///
/// Implementations must be pure: the same input always gives the same output.
pub trait LinearOperator: Sync {
    fn dim(&self) -> usize;

    /// Writes M·v into `out`. Both slices have length `dim()`.
    fn apply_to(&self, v: &[C64], out: &mut [C64]);
}

impl LinearOperator for ComplexMatrix {
    fn dim(&self) -> usize {
        self.rows()
    }

    fn apply_to(&self, v: &[C64], out: &mut [C64]) {
        apply_into(self, v, out);
    }
}

/// The product A·B applied as two successive matrix-vector products
/// (B first, then A), without forming A·B.
pub struct ProductOperator<'a> {
    pub left: &'a ComplexMatrix,
    pub right: &'a ComplexMatrix,
}

impl LinearOperator for ProductOperator<'_> {
    fn dim(&self) -> usize {
        self.left.rows()
    }

    fn apply_to(&self, v: &[C64], out: &mut [C64]) {
        let mut tmp = vec![C64::new(0.0, 0.0); self.right.rows()];
        apply_into(self.right, v, &mut tmp);
        apply_into(self.left, &tmp, out);
    }
}
