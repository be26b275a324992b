//! Direct numerical quadrature of the defining integrals, and exact expansion of
//! the angular moments, used as independent references for the series
//! evaluators and the assembled kernels.

mod integrals;
mod operator;
mod order;
mod quadrature;
mod symbolic;

pub use integrals::{a_direct, psi_cyl, xi_direct, z_direct};
pub(crate) use integrals::cos_multiple;
pub use operator::partial_wave_direct;
pub use order::{CylindricalParams, Rank2Order, XiOrder};
pub(crate) use quadrature::grading_levels;
pub use quadrature::{
    gauss_legendre, graded_breaks, integrate_1d, integrate_1d_on, integrate_2d, integrate_2d_on, QuadratureSpec,
    TensorIntegrand,
};
pub use symbolic::{a_expansion, cosine_power_moment};
