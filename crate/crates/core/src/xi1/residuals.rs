use crate::error::{Error, Result};
use crate::hypcore::{default_tolerance, Residual};
use crate::scalar::{from_i64, lit, normalized_by_terms, Scalar};

use super::normalization::Normalization;
use super::series::xi1_jet;

fn check_open<T: Scalar>(x: T) -> Result<()> {
    if x > T::zero() && x < T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("residual checks need 0 < x < 1, got {x:?}")))
    }
}

/// Form of the first-derivative coefficient in the rank-1 second-order equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DriftCoefficient {
    /// `x (1 - 3x²)`: the Legendre-type equation the series actually satisfies.
    Cubic,
    /// `x (1 - 3x)`: kept so the variant can be shown to fail.
    Quadratic,
}

/// Residual of `x²(1-x²)Ξ'' + x(1-3x²)Ξ' + (x²(k²-1) - k²)Ξ = 0`, normalized
/// by the largest of the three terms.
pub fn xi1_ode_residual<T: Scalar>(k: u32, x: T, norm: &Normalization<T>) -> Result<Residual<T>> {
    xi1_ode_residual_with(k, x, norm, DriftCoefficient::Cubic)
}

pub fn xi1_ode_residual_with<T: Scalar>(
    k: u32,
    x: T,
    norm: &Normalization<T>,
    drift: DriftCoefficient,
) -> Result<Residual<T>> {
    check_open(x)?;
    let jet = xi1_jet(k, x, 2, default_tolerance(), norm)?;
    let [f, d1, d2, _] = jet.values;
    let kk = from_i64::<T>(k as i64) * from_i64::<T>(k as i64);
    let three = lit::<T>(3.0);
    let drift = match drift {
        DriftCoefficient::Cubic => x * (T::one() - three * x * x),
        DriftCoefficient::Quadratic => x * (T::one() - three * x),
    };
    let terms = [
        x * x * (T::one() - x) * (T::one() + x) * d2,
        drift * d1,
        (x * x * (kk - T::one()) - kk) * f,
    ];
    Ok(Residual { value: normalized_by_terms(&terms), converged: jet.converged })
}

/// Residual of the order-raising relation
/// `(x d/dx + 1/2)(Ξ^k + Ξ^(k+2)) = ((1+x²) d/dx + x) Ξ^(k+1)`.
pub fn xi1_diffdiff_residual<T: Scalar>(k: u32, x: T, norm: &Normalization<T>) -> Result<Residual<T>> {
    check_open(x)?;
    let tol = default_tolerance();
    let lo = xi1_jet(k, x, 1, tol, norm)?;
    let mid = xi1_jet(k + 1, x, 1, tol, norm)?;
    let hi = xi1_jet(k + 2, x, 1, tol, norm)?;
    let half = lit::<T>(0.5);
    let terms = [
        x * lo.values[1],
        x * hi.values[1],
        half * lo.values[0],
        half * hi.values[0],
        -(T::one() + x * x) * mid.values[1],
        -x * mid.values[0],
    ];
    Ok(Residual { value: normalized_by_terms(&terms), converged: lo.converged && mid.converged && hi.converged })
}
