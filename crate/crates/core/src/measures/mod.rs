//! Fidelity and divergence measures between quantum states.

pub mod cyclic;
pub mod divergence;
pub mod fidelity;

pub use cyclic::{cyclic_scale, cyclic_traces, trace_fn_cyclic_check, trace_poly, CyclicTraces};
pub use divergence::{
    alpha_z_divergence, alpha_z_divergence_three_factor, relative_entropy, renyi_divergence, sandwiched_renyi,
    Divergence,
};
pub use fidelity::{
    cheb_truncation_bound, classical_fidelity, fidelity, fidelity_cheb, fidelity_product, fidelity_uhlmann,
    FidelityMethod, FidelityReport, DEFAULT_CHEB_DEGREE,
};
