use super::params::{PfqParams, Residual};
use super::pochhammer::pochhammer;
use super::series::{pfq, pfq_derivative};
use num_traits::{Float, One, ToPrimitive};

use crate::error::{Error, Result};
use crate::DoubleDouble;
use crate::scalar::{lit, normalized_by_reference, Scalar};

/// Allowed violation of `-n + A + B + C + 1 = E + F + G`.
pub const BALANCE_TOLERANCE: f64 = 1e-12;

/// Residual of the `3F2` contiguous relation
///
/// ```text
/// (b1 b2 + a2 (a3 - a1) y) F + (b2 + (a3 - a1) y) δF
///   = a2 a3 (b2 - a1 + 1) y / (b2 + 1) · 3F2(a1, a2+1, a3+1; b1+1, b2+2; y)
///   + b1 b2 · 3F2(a1, a2, a3-1; b1, b2; y),
/// ```
///
/// where `F = 3F2(a1, a2, a3; b1+1, b2+1; y)` and `δ = y d/dy`, normalised by
/// `max(1, |RHS|)`.
pub fn contiguous_3f2_residual<T: Scalar>(a: [T; 3], b: [T; 2], y: T, tol: T) -> Result<Residual<T>> {
    if !(y.abs() < T::one()) {
        return Err(Error::Domain(format!("contiguous relation needs |y| < 1, got {y:?}")));
    }
    let [a1, a2, a3] = a;
    let [b1, b2] = b;
    let one = T::one();
    let base = PfqParams::new(vec![a1, a2, a3], vec![b1 + one, b2 + one], y)?;
    let f = pfq(&base, tol)?;
    let df = pfq_derivative(&base, 1, tol)?;
    let delta_f = y * df.value;
    let lhs = (b1 * b2 + a2 * (a3 - a1) * y) * f.value + (b2 + (a3 - a1) * y) * delta_f;

    let up = pfq(&PfqParams::new(vec![a1, a2 + one, a3 + one], vec![b1 + one, b2 + lit(2.0)], y)?, tol)?;
    let down = pfq(&PfqParams::new(vec![a1, a2, a3 - one], vec![b1, b2], y)?, tol)?;
    let rhs = a2 * a3 * (b2 - a1 + one) * y / (b2 + one) * up.value + b1 * b2 * down.value;
    Ok(Residual {
        value: normalized_by_reference(lhs - rhs, rhs),
        converged: f.converged && df.converged && up.converged && down.converged,
    })
}

/// Residual of the balanced `4F3(1)` transformation
///
/// ```text
/// 4F3(-n, A, B, C; E, F, G; 1)
///   = (F-C)_n (G-C)_n / ((F)_n (G)_n) · 4F3(-n, E-A, E-B, C; E, E+F-A-B, E+G-A-B; 1),
/// ```
///
/// both sides summed as terminating series, normalised by `max(1, |LHS|)`.
/// Fails with a parameter error when `-n + A + B + C + 1 = E + F + G` is violated
/// by more than [`BALANCE_TOLERANCE`].
pub fn whipple_4f3_residual<T: Scalar>(n: u32, p: [T; 6]) -> Result<Residual<T>> {
    let [a, b, c, e, f, g] = p;
    let nn = T::from_u32(n).expect("small integer");
    let imbalance = -nn + a + b + c + T::one() - (e + f + g);
    if !(imbalance.abs() <= lit(BALANCE_TOLERANCE)) {
        return Err(Error::Parameter(format!(
            "unbalanced 4F3 (imbalance {imbalance:?}): n={n}, A={a:?}, B={b:?}, C={c:?}, E={e:?}, F={f:?}, G={g:?}"
        )));
    }
    // Both sides alternate with cancellation growing quickly in n, so they are
    // summed in double-double whatever the working scalar.
    let [a, b, c, e, f, g] = p.map(lift);
    let nn = DoubleDouble::from(n as f64);
    let tol = DoubleDouble::epsilon();
    let one = DoubleDouble::one();
    let lhs = pfq(&PfqParams::new(vec![-nn, a, b, c], vec![e, f, g], one)?, tol)?;
    let inner = pfq(
        &PfqParams::new(vec![-nn, e - a, e - b, c], vec![e, e + f - a - b, e + g - a - b], one)?,
        tol,
    )?;
    let pref = pochhammer(f - c, n) * pochhammer(g - c, n) / (pochhammer(f, n) * pochhammer(g, n));
    let rhs = pref * inner.value;
    let value = normalized_by_reference(lhs.value - rhs, lhs.value);
    Ok(Residual { value: lower(value), converged: true })
}

fn lift<T: Scalar>(v: T) -> DoubleDouble {
    let hi = v.to_f64().unwrap_or(f64::NAN);
    let lo = (v - T::from(hi).unwrap_or_else(T::nan)).to_f64().unwrap_or(0.0);
    DoubleDouble::from(hi) + DoubleDouble::from(lo)
}

fn lower<T: Scalar>(v: DoubleDouble) -> T {
    let hi = f64::from(v);
    let lo = (v - DoubleDouble::from(hi)).to_f64().unwrap_or(0.0);
    T::from(hi).unwrap_or_else(T::nan) + T::from(lo).unwrap_or_else(T::zero)
}
