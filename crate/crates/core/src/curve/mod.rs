//! The symmetric biquadratic `L(x, y)`, the numerator of
//! `(F(x) - F(y)) / (x - y)`, whose off-diagonal GF(2^m)-zeros witness
//! collisions of `F`.

mod bound;
mod classify;
mod coeffs;
mod factor;
mod points;

pub use bound::{hasse_weil_lower_bound, HasseWeilBound, BOUND_SCALE};
pub use classify::{
    class_of, classify, classify_triple, reconstruct_factors, CurveClass, FactorizationReport,
};
pub use coeffs::{curve_coeffs, CurveCoeffs, L_eval};
pub use factor::BiPoly;
pub use points::{count_rational_zeros, ZeroCounts, MAX_COUNT_DEGREE};
