//! Numerics for the principal series of SL(2,R): gamma-function kernels,
//! group decompositions, intertwiner constants, generalised spherical
//! functions and completely bounded norms of the latter.
//!
//! Every kernel is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix `f64`, which is what the tolerances are tuned for.

// `!(x < bound)` is used on purpose so NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cgamma;
pub mod error;
pub mod intertwine;
pub mod norms;
pub mod quadrature;
pub mod repn;
pub mod scalar;
pub mod sl2;
pub mod spherical;

pub use num_complex::Complex;

pub use error::{Error, PoleSite, Result};
pub use repn::{CirclePoint, Parity, SpectralParam, WeightIndex};
pub use scalar::Real;

pub type Complex64 = Complex<f64>;
pub type GroupElement64 = sl2::GroupElement<f64>;
pub type QuadratureSpec64 = quadrature::QuadratureSpec<f64>;
pub type SpectralParam64 = repn::SpectralParam<f64>;
pub type SphericalQuery64 = spherical::SphericalQuery<f64>;
pub type NormReport64 = norms::NormReport<f64>;
pub type SweepRow64 = norms::SweepRow<f64>;
