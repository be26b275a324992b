//! Rank-1 Ξ-functions `(1/2)∫₀^π cos kθ (1 + x² - 2x cos θ)^{-1/2} dθ`.

mod calibration;
mod normalization;
mod residuals;
mod series;

pub use calibration::{
    calibrate_normalization, default_calibration, default_samples, CalibrationSamples, CALIBRATION_SPREAD_LIMIT,
};
pub use normalization::{Calibration, Normalization, NormalizationMode};
pub use residuals::{xi1_diffdiff_residual, xi1_ode_residual, xi1_ode_residual_with, DriftCoefficient};
pub use series::{xi1_jet, xi1_series, SeriesCoefficients};
pub(crate) use series::xi1_bare_with_complement;
