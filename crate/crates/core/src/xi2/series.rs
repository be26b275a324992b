use crate::error::{Error, Result};
use crate::hypcore::{pfq, pfq_jet, power_composite_jet, EvalResult, Jet, PfqParams};
use crate::oracle::{graded_breaks, grading_levels, integrate_1d_on, QuadratureSpec, Rank2Order};
use crate::scalar::{from_i64, lit, rational_to_scalar, Scalar};
use crate::xi1::xi1_bare_with_complement;

use super::combinatorics::{inner_coefficient, outer_coefficient};

/// Above this argument the value is computed by reduction to a one-dimensional
/// integral of rank-1 functions instead of the alternating series.
pub const NEAR_UNIT_THRESHOLD: f64 = 0.99;

fn check_argument<T: Scalar>(x: T) -> Result<()> {
    if x >= T::zero() && x < T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("rank-2 argument must lie in [0, 1), got {x:?}")))
    }
}

fn inner_params<T: Scalar>(order: Rank2Order, j: u32, x: T) -> Result<PfqParams<T>> {
    let (k1, k2) = (from_i64::<T>(order.k1() as i64), from_i64::<T>(order.k2() as i64));
    let jj = from_i64::<T>(j as i64);
    let half = lit::<T>(0.5);
    PfqParams::new(
        vec![half + jj, k1 + half + jj, k1 + k2 + half + jj + jj],
        vec![k2 + T::one() + jj, k1 + k2 + T::one() + jj],
        -(x * x),
    )
}

/// Terms `(scale_j, power_j, params_j)` of the finite sum, zero terms dropped.
fn terms<T: Scalar>(order: Rank2Order, x: T) -> Result<Vec<(T, u32, PfqParams<T>)>> {
    let outer = outer_coefficient(order.k1(), order.k2());
    let pi2 = T::PI() * T::PI();
    let mut out = Vec::new();
    for j in 0..=order.s() {
        let c = inner_coefficient(order.k1(), order.k2(), j);
        if c == num_traits::Zero::zero() {
            continue;
        }
        let scale = rational_to_scalar::<T>(&(c * outer.clone())) * pi2;
        out.push((scale, order.total() + 2 * j, inner_params(order, j, x)?));
    }
    Ok(out)
}

/// Rank-2 Ξ-function of canonical order `(k₁, k₂)`, as the finite sum over
/// `j = 0..=s` of exact coefficients times `3F2(...; -x²)`.
///
/// For `x > 0.99` the same function is evaluated by integrating rank-1
/// functions over one angle, which keeps the cost bounded up to `x → 1`.
pub fn xi2_series<T: Scalar>(order: Rank2Order, x: T, tol: T) -> Result<EvalResult<T>> {
    check_argument(x)?;
    if x > lit(NEAR_UNIT_THRESHOLD) {
        return near_unit(order, x, tol);
    }
    xi2_finite_sum(order, x, tol)
}

/// The finite-sum representation at any `x` in `[0, 1)`, without switching.
pub fn xi2_finite_sum<T: Scalar>(order: Rank2Order, x: T, tol: T) -> Result<EvalResult<T>> {
    check_argument(x)?;
    let mut acc = EvalResult { value: T::zero(), abs_error: T::zero(), terms_used: 0, converged: true };
    for (scale, power, params) in terms(order, x)? {
        let f = pfq(&params, tol)?;
        acc = acc.combine(f.scaled(scale * x.powi(power as i32)));
    }
    Ok(acc)
}

/// Value and first `max_order` derivatives of the finite sum, termwise.
pub fn xi2_jet<T: Scalar>(order: Rank2Order, x: T, max_order: u32, tol: T) -> Result<Jet<T>> {
    check_argument(x)?;
    let mut acc = Jet::zero();
    for (scale, power, params) in terms(order, x)? {
        let inner = pfq_jet(&params, max_order, tol)?;
        acc = acc.add(&power_composite_jet(power, -T::one(), x, &inner).scaled(scale));
    }
    Ok(acc)
}

fn check_diagonal(order: Rank2Order) -> Result<()> {
    if order.near_diagonal() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "single-term form needs k2 - k1 <= 1, got ({}, {})",
            order.k1(),
            order.k2()
        )))
    }
}

/// `π² (1/2)_K 2^K / (4^{K+1} k₁! k₂!)` accumulated in floating point.
fn diagonal_prefactor<T: Scalar>(order: Rank2Order) -> T {
    let mut p = lit::<T>(0.25) * T::PI() * T::PI();
    for i in 0..order.total() {
        p = p * (from_i64::<T>(i as i64) + lit(0.5)) * lit(0.5);
    }
    for i in 1..=order.k1() {
        p = p / from_i64::<T>(i as i64);
    }
    for i in 1..=order.k2() {
        p = p / from_i64::<T>(i as i64);
    }
    p
}

/// Single-`3F2` form valid when `k₂ - k₁ <= 1`.
pub fn xi2_diag<T: Scalar>(order: Rank2Order, x: T, tol: T) -> Result<EvalResult<T>> {
    check_diagonal(order)?;
    check_argument(x)?;
    let f = pfq(&inner_params(order, 0, x)?, tol)?;
    Ok(f.scaled(diagonal_prefactor::<T>(order) * x.powi(order.total() as i32)))
}

/// Derivatives of the single-`3F2` form.
pub fn xi2_diag_jet<T: Scalar>(order: Rank2Order, x: T, max_order: u32, tol: T) -> Result<Jet<T>> {
    check_diagonal(order)?;
    check_argument(x)?;
    let inner = pfq_jet(&inner_params(order, 0, x)?, max_order, tol)?;
    Ok(power_composite_jet(order.total(), -T::one(), x, &inner).scaled(diagonal_prefactor::<T>(order)))
}

/// `Ξ₂(x) = (π/2) ∫₀^π cos(k₂θ) √((1+y²)/A) Ξ₁^{k₁}(y) dθ` with
/// `A = 1 + x² - x cos θ`, `t = x/A`, `y = t / (1 + √(1-t²))`, where
/// `Ξ₁` is the bare closed form.
fn near_unit<T: Scalar>(order: Rank2Order, x: T, tol: T) -> Result<EvalResult<T>> {
    let (k1, k2) = (order.k1(), order.k2());
    let inner_tol = tol * lit(0.1);
    let mut converged = true;
    let mut failure = None;
    let two = lit::<T>(2.0);
    let f = |theta: T| {
        let h = (theta * lit(0.5)).sin();
        let s2 = h * h;
        let gap = (T::one() - x) * (T::one() - x) + two * x * s2;
        let a = gap + x;
        let t = x / a;
        let one_minus_t = gap / a;
        let root = (one_minus_t * (T::one() + t)).sqrt();
        let y = t / (T::one() + root);
        let one_minus_y = (one_minus_t + root) / (T::one() + root);
        let angular = crate::oracle::cos_multiple(k2, T::one() - two * s2);
        match xi1_bare_with_complement(k1, y, one_minus_y, inner_tol) {
            Ok(r) => {
                converged &= r.converged;
                angular * ((T::one() + y * y) / a).sqrt() * r.value
            }
            Err(e) => {
                failure.get_or_insert(e);
                T::nan()
            }
        }
    };
    let pi = T::PI();
    let breaks = graded_breaks(T::zero(), pi, grading_levels(T::one() - x));
    let spec = QuadratureSpec::new(16, 1, tol.max(T::epsilon() * lit(16.0)), 30)?;
    let mut res = integrate_1d_on(f, &breaks, &spec)?;
    if let Some(e) = failure {
        return Err(e);
    }
    res.converged &= converged;
    Ok(res.scaled(pi * lit(0.5)))
}
