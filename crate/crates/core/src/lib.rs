//! Rank-1 and rank-2 Ξ-functions: hypergeometric series evaluators, brute-force
//! quadrature oracles for every defining integral, identity residual checks and
//! Nyström assembly of the partial relaxation operators whose kernels the
//! Ξ-functions generate.
//!
//! The numerical code is generic over [`Scalar`] (`f32`, `f64` and the
//! double-double [`DoubleDouble`]); exact combinatorics run on [`Rational`].
//! The aliases at the bottom of this file fix the scalar to `f64`, which is what
//! the command-line front end uses.

pub mod dd;
pub mod error;
pub mod hypcore;
pub mod kernels;
pub mod oracle;
pub mod scalar;
pub mod xi1;
pub mod xi2;

pub use dd::DoubleDouble;
pub use error::{Error, Result};
pub use hypcore::{EvalResult, PfqParams, Residual};
pub use oracle::{QuadratureSpec, Rank2Order, XiOrder};
pub use scalar::Scalar;
pub use xi1::{Calibration, Normalization};

/// Exact arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

pub type EvalResult64 = EvalResult<f64>;
pub type PfqParams64 = PfqParams<f64>;
pub type QuadratureSpec64 = QuadratureSpec<f64>;
pub type KernelMatrix64 = kernels::KernelMatrix<f64>;
pub type RadialField64 = kernels::RadialField<f64>;
