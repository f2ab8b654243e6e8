//! Quaternion probability densities, their moments, characteristic
//! functions and covariances.
//!
//! Expectations are weighted integrals `∫ w(x) f(x) dx` with a real weight,
//! so weight placement does not matter. Quaternion normalizations and
//! products of expectations do depend on order; every function here states
//! which side each factor sits on.

mod charfn;
mod density;
mod moments;

pub use charfn::{
    charfn, charfn_properties, fourier_charfn_at, invert_charfn, marginal_charfn, Axis, CharFn, CharFnMode,
    Continuity, PropertyReport,
};
pub use density::{
    validate_qpdf, Component, ComponentStats, Qpdf, QpdfReport, Strictness, Violation, INTEGRAL_TOL, NEGATIVITY_TOL,
};
pub use moments::{covariance, expectation, fd_moment, quotient, MomentReport, Quotient, Weight, MIN_FD_STEP};
