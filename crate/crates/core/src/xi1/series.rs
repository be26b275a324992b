use crate::error::{Error, Result};
use crate::hypcore::{pfq, pfq_jet, pochhammer, power_composite_jet, rational, EvalResult, Jet, PfqParams};
use crate::scalar::{from_i64, lit, rational_to_scalar, Scalar};
use crate::Rational;
use num_traits::{One, Zero};

use super::normalization::Normalization;

fn check_argument<T: Scalar>(x: T) -> Result<()> {
    if x >= T::zero() && x < T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("rank-1 argument must lie in [0, 1), got {x:?}")))
    }
}

/// `(1/2)_k / (2 k!)`, accumulated as a product of ratios so large `k` does not overflow.
fn leading_coefficient<T: Scalar>(k: u32) -> T {
    (0..k).fold(lit::<T>(0.5), |acc, i| acc * (from_i64::<T>(i as i64) + lit(0.5)) / from_i64::<T>(i as i64 + 1))
}

fn inner_params<T: Scalar>(k: u32, x: T) -> Result<PfqParams<T>> {
    let kk = from_i64::<T>(k as i64);
    Ok(PfqParams::new(vec![lit(0.5), kk + lit(0.5)], vec![kk + T::one()], x * x)?
        .with_complement((T::one() - x) * (T::one() + x)))
}

/// Rank-1 Ξ-function as `(1/2)_k x^k / (2 k!) · 2F1(1/2, 1/2+k; k+1; x²)`,
/// multiplied by the normalization constant.
pub fn xi1_series<T: Scalar>(k: u32, x: T, tol: T, norm: &Normalization<T>) -> Result<EvalResult<T>> {
    check_argument(x)?;
    let scale = norm.scale_for_rank(1)?;
    Ok(xi1_bare_with_complement(k, x, T::one() - x, tol)?.scaled(scale))
}

/// Unnormalized rank-1 value at `y` given `1 - y` computed without cancellation.
pub(crate) fn xi1_bare_with_complement<T: Scalar>(k: u32, y: T, one_minus_y: T, tol: T) -> Result<EvalResult<T>> {
    if y == T::zero() {
        return Ok(EvalResult::exact(if k == 0 { leading_coefficient::<T>(0) } else { T::zero() }));
    }
    let kk = from_i64::<T>(k as i64);
    let params = PfqParams::new(vec![lit(0.5), kk + lit(0.5)], vec![kk + T::one()], y * y)?
        .with_complement(one_minus_y * (T::one() + y));
    Ok(pfq(&params, tol)?.scaled(leading_coefficient::<T>(k) * y.powi(k as i32)))
}

/// Value and the first `max_order` derivatives in `x`, computed termwise.
pub fn xi1_jet<T: Scalar>(k: u32, x: T, max_order: u32, tol: T, norm: &Normalization<T>) -> Result<Jet<T>> {
    check_argument(x)?;
    let scale = norm.scale_for_rank(1)?;
    let inner = pfq_jet(&inner_params(k, x)?, max_order, tol)?;
    Ok(power_composite_jet(k, T::one(), x, &inner).scaled(leading_coefficient::<T>(k) * scale))
}

/// Maclaurin coefficients of the rank-1 Ξ-function in the unnormalized
/// series convention, exact.
///
/// `τ_n = (1/2)_a (1/2)_b / (2 a! b!)` with `a = (n-k)/2`, `b = (n+k)/2`
/// when `n >= k` and `n - k` is even; zero otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoefficients {
    order: u32,
    coefficients: Vec<Rational>,
}

impl SeriesCoefficients {
    /// Coefficients `τ_0 ..= τ_max_degree`.
    pub fn new(order: u32, max_degree: u32) -> Self {
        let coefficients = (0..=max_degree).map(|n| Self::tau(order, n)).collect();
        Self { order, coefficients }
    }

    pub fn tau(k: u32, n: u32) -> Rational {
        if n < k || (n - k) % 2 == 1 {
            return Rational::zero();
        }
        let a = (n - k) / 2;
        let b = (n + k) / 2;
        let half = rational(1, 2);
        let fact = |m: u32| (1..=m).fold(Rational::one(), |acc, i| acc * rational(i as i64, 1));
        half.clone() * pochhammer(half.clone(), a) * pochhammer(half, b) / (fact(a) * fact(b))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// Truncated power series `Σ τ_n x^n` (Horner).
    pub fn evaluate<T: Scalar>(&self, x: T) -> T {
        self.coefficients.iter().rev().fold(T::zero(), |acc, c| acc * x + rational_to_scalar::<T>(c))
    }
}
