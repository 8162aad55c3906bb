//! Density matrices, probability vectors, seeded sampling and file formats.

pub mod density;
pub mod io;
pub mod rng;

pub use density::{
    ginibre_matrix, random_density_ginibre, random_pure_state, random_unitary, repair_density, validate_density,
    DensityMatrix, ProbVector, RepairLog,
};
pub use rng::SeededRng;
