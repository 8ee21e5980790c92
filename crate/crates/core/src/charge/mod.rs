//! Central charge `Z(t) = −∫ (c1(L) − t√−1 ω)^n / n!`, its winding angle, and
//! the Chern-number and Khovanskii–Teissier inequalities expressed through
//! intersection numbers.

mod inequalities;
mod profile;
mod roots;
mod winding;

pub use inequalities::{
    analytic_angle_from_integrals, check_chern_n3, check_chern_n4, general_kt,
    integrated_sigma_chain, kt_chain, SigmaChainReport,
};
pub use profile::IntersectionProfile;
pub use roots::{positive_roots_even, positive_roots_odd, quadratic_roots};
pub use winding::{
    compute_winding, reference_angle, winding_report, z_of_t, ChargePath, PathSample, WindingReport,
};
