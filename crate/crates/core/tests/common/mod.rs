#![allow(dead_code)]

use qfid_core::states::ginibre_matrix;
use qfid_core::{ComplexMatrix, SeededRng};

pub fn random_hermitian(dim: usize, rng: &mut SeededRng) -> ComplexMatrix {
    let g = ginibre_matrix(dim, dim, rng);
    g.add(&g.adjoint()).unwrap().scale_real(0.5)
}

/// G·G† with G of shape dim×rank.
pub fn random_psd(dim: usize, rank: usize, rng: &mut SeededRng) -> ComplexMatrix {
    let g = ginibre_matrix(dim, rank, rng);
    qfid_core::linalg::matmul(&g, &g.adjoint()).unwrap().symmetrized()
}

pub fn frob_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.sub(b).unwrap().frobenius_norm()
}
