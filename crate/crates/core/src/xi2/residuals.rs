use crate::error::{Error, Result};
use crate::hypcore::{default_tolerance, Residual};
use crate::oracle::Rank2Order;
use crate::scalar::{from_i64, lit, normalized_by_terms, ratio, Scalar};

use super::series::{xi2_diag_jet, xi2_jet};

fn check_open<T: Scalar>(x: T) -> Result<()> {
    if x > T::zero() && x < T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("residual checks need 0 < x < 1, got {x:?}")))
    }
}

/// Residual of the relation between the near-diagonal and diagonal functions
/// `(1/2)(1/x + (1-x²) d/dx) Ξ^{k,k+1} = (k+1/4) Ξ^{k,k} - (k+3/4) Ξ^{k+1,k+1}`.
pub fn xi2_diffdiff_residual<T: Scalar>(k: u32, x: T) -> Result<Residual<T>> {
    check_open(x)?;
    let tol = default_tolerance();
    let off = xi2_jet(Rank2Order::new(k, k + 1), x, 1, tol)?;
    let lo = xi2_jet(Rank2Order::new(k, k), x, 0, tol)?;
    let hi = xi2_jet(Rank2Order::new(k + 1, k + 1), x, 0, tol)?;
    let kk = from_i64::<T>(k as i64);
    let half = lit::<T>(0.5);
    let terms = [
        half * off.values[0] / x,
        half * (T::one() - x) * (T::one() + x) * off.values[1],
        -(kk + lit(0.25)) * lo.values[0],
        (kk + lit(0.75)) * hi.values[0],
    ];
    Ok(Residual { value: normalized_by_terms(&terms), converged: off.converged && lo.converged && hi.converged })
}

/// Coefficients `[c₀, c₁, c₂, c₃]` of the third-order equation
/// `Σ c_n D^n Ξ = 0` satisfied when `k₂ - k₁ <= 1`.
pub fn rank2_ode_coefficients<T: Scalar>(order: Rank2Order, x: T) -> [T; 4] {
    let k1 = from_i64::<T>(order.k1() as i64);
    let k2 = from_i64::<T>(order.k2() as i64);
    let sum2 = (k1 + k2) * (k1 + k2);
    let x2 = x * x;
    let one = T::one();
    [
        x2 * (sum2 - one) * (k2 - k1 - one) + (k1 - k2) * sum2,
        -x * (sum2 * (x2 + one) + (k2 - k1 - ratio(7, 3)) * (lit::<T>(3.0) * x2 - one) - ratio(10, 3)),
        x2 * ((k1 - k2 + lit(6.0)) * (x2 - one) + lit(9.0)),
        x2 * x * (one + x2),
    ]
}

/// Coefficients of the specialized equation for order `(0, 0)`:
/// `x³(1+x²)D³ + 3x²(2x²+1)D² + x(7x²+1)D + x²`.
pub fn lowest_mode_coefficients<T: Scalar>(x: T) -> [T; 4] {
    let x2 = x * x;
    [x2, x * (lit::<T>(7.0) * x2 + T::one()), lit::<T>(3.0) * x2 * (lit::<T>(2.0) * x2 + T::one()), x2 * x * (T::one() + x2)]
}

fn apply<T: Scalar>(c: &[T; 4], d: &[T; 4]) -> [T; 4] {
    [c[0] * d[0], c[1] * d[1], c[2] * d[2], c[3] * d[3]]
}

/// Residual of the third-order equation applied to the single-`3F2` form,
/// normalized by the largest of the four terms.
pub fn xi2_ode_residual<T: Scalar>(order: Rank2Order, x: T) -> Result<Residual<T>> {
    check_open(x)?;
    let jet = xi2_diag_jet(order, x, 3, default_tolerance())?;
    let terms = apply(&rank2_ode_coefficients(order, x), &jet.values);
    Ok(Residual { value: normalized_by_terms(&terms), converged: jet.converged })
}

/// Residual of the specialized lowest-mode equation.
pub fn lowest_mode_ode_residual<T: Scalar>(x: T) -> Result<Residual<T>> {
    check_open(x)?;
    let jet = xi2_diag_jet(Rank2Order::new(0, 0), x, 3, default_tolerance())?;
    let terms = apply(&lowest_mode_coefficients(x), &jet.values);
    Ok(Residual { value: normalized_by_terms(&terms), converged: jet.converged })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_between_orders() {
        assert!(xi2_diffdiff_residual(0, 0.3f64).unwrap().value < 1e-8);
        assert!(xi2_diffdiff_residual(4, 0.6f64).unwrap().value < 1e-8);
    }

    #[test]
    fn third_order_equation() {
        assert!(lowest_mode_ode_residual(0.5f64).unwrap().value < 1e-7);
        assert!(xi2_ode_residual(Rank2Order::new(0, 0), 0.5f64).unwrap().value < 1e-7);
        assert!(xi2_ode_residual(Rank2Order::new(1, 2), 0.25f64).unwrap().value < 1e-7);
        assert!(xi2_ode_residual(Rank2Order::new(0, 2), 0.25f64).is_err());
    }

    #[test]
    fn lowest_mode_is_the_zero_order_case() {
        for x in [0.1f64, 0.5, 0.9] {
            let a = rank2_ode_coefficients(Rank2Order::new(0, 0), x);
            let b = lowest_mode_coefficients(x);
            for i in 0..4 {
                assert!((a[i] - b[i]).abs() < 1e-14, "{i}");
            }
        }
    }
}
