//! Rank-2 Ξ-functions
//! `(1/4)∫₀^π∫₀^π cos k₁θ₁ cos k₂θ₂ (1 + x² - x(cos θ₁ + cos θ₂))^{-1/2} dθ₁dθ₂`.

mod combinatorics;
mod residuals;
mod series;

pub use crate::oracle::Rank2Order;
pub use combinatorics::{a_closed, s_sum_closed, s_sum_direct, s_sum_recurrence_check, PiSquaredRational};
pub use residuals::{
    lowest_mode_coefficients, lowest_mode_ode_residual, rank2_ode_coefficients, xi2_diffdiff_residual,
    xi2_ode_residual,
};
pub use series::{xi2_diag, xi2_diag_jet, xi2_finite_sum, xi2_jet, xi2_series, NEAR_UNIT_THRESHOLD};
