//! Numerical toolkit for deformed Hermitian-Yang-Mills (dHYM) line bundles on
//! Kähler 3- and 4-folds.
//!
//! The crate joins two views of the same data:
//!
//! * the pointwise view, where a dHYM metric is described by the relative
//!   eigenvalues `λ` of the curvature form against the Kähler form
//!   ([`phase`], [`hermitian`]);
//! * the cohomological view, where only the intersection numbers
//!   `d_k = ∫ c1(L)^k ∧ ω^(n-k)` are known ([`charge`]).
//!
//! [`models`] produces intersection profiles from pointwise data, which is
//! what lets every Chern-number inequality be checked against an exact
//! desk-scale model.

pub mod charge;
pub mod cli;
pub mod error;
pub mod format;
pub mod hermitian;
pub mod models;
pub mod phase;
pub mod report;
pub mod suites;

pub use charge::{
    analytic_angle_from_integrals, check_chern_n3, check_chern_n4, compute_winding, general_kt,
    integrated_sigma_chain, kt_chain, winding_report, z_of_t, IntersectionProfile, PathSample,
    SigmaChainReport, WindingReport,
};
pub use error::{Error, Result};
pub use hermitian::{phase_of_pair, relative_spectrum, CMatrix, HermitianPair};
pub use models::{blowup_p3, consistency_suite, constant_model, weighted_model, ModelSpec};
pub use phase::{
    branch_check, factorization_identity, gamma_cone, lagrangian_phase, level_set_sample,
    mixed_sigma, phase_components, sigma, BranchInterval, BranchReport, EigenTuple,
    LevelSetSampler,
};
pub use report::{InequalityEntry, InequalityReport};
