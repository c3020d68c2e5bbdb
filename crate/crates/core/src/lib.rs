//! Arithmetic over GF(2^m) and GF(2^{2m}), the quadrinomial
//! `x̄^3 + a1 x̄^2 x + a2 x^2 x̄ + a3 x^3`, and the bivariate curve attached
//! to it.

pub mod curve;
pub mod error;
pub mod field;
mod poly;
pub mod quadperm;
pub mod sample;
pub mod tower;

pub use curve::{
    classify, count_rational_zeros, curve_coeffs, hasse_weil_lower_bound, reconstruct_factors,
    CurveClass, CurveCoeffs, FactorizationReport, HasseWeilBound,
};
pub use error::{Error, Result};
pub use field::{FieldCtx, FieldDescriptor, Fq};
pub use quadperm::{
    f_eval, gamma_member, is_perm_bruteforce, is_perm_structured, normalize_triple, theta_of,
    RationalMapCoeffs, ThetaVector, Triple,
};
pub use tower::{Fq2, Mode, TowerCtx};
