use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("kernel is singular on the diagonal r = rho = {0}")]
    SingularDiagonal(f64),
    #[error("kernel is undefined at r = rho = 0")]
    Undefined,
    #[error("calibration inconsistent: per-sample ratio spread {spread:e} exceeds {limit:e} (constant {constant})")]
    CalibrationInconsistent { constant: f64, spread: f64, limit: f64 },
    #[error("field validation failed: {0}")]
    Validation(String),
    #[error("matrix is not symmetric in the weighted inner product (residual {0:e})")]
    Asymmetric(f64),
}
