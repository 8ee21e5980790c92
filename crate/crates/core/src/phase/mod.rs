//! Pointwise dHYM machinery: elementary symmetric functions of the relative
//! eigenvalues, the Lagrangian phase operator, the branch inequalities that
//! drive the four-dimensional Chern-number estimates, and level-set sampling.

mod branch;
mod sampler;
mod tuple;

pub use branch::{branch_check, BranchInterval, BranchReport};
pub use sampler::{level_set_sample, LevelSetSampler};
pub use tuple::{
    binomial, factorization_identity, gamma_cone, lagrangian_phase, mixed_sigma, phase_components,
    sigma, EigenTuple,
};
