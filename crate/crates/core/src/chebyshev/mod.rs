//! Chebyshev expansions on [0, b] and diagonalization-free trace estimation.

pub mod series;
pub mod trace;

pub use series::{
    cheb_t, clenshaw_eval, coeffs_by_quadrature, default_nodes, eval_monomials, map_from_cheb, map_to_cheb,
    power_coeffs, reduction_integral, series_to_power_coeffs, sqrt_coeffs_closed, ChebyshevSeries, MIN_DEFAULT_NODES,
};
pub use trace::{spectral_bound, trace_fn_exact_moments, trace_fn_hutchinson, SpectralBound, TraceEstimate};
