//! Gamma and digamma in the scalar type.
//!
//! Integer and half-integer arguments (the only ones the Ξ series produce)
//! are evaluated from closed forms at full precision of `T`; other arguments
//! fall back to `f64` routines.

use crate::scalar::{lit, Scalar};

fn euler_gamma<T: Scalar>() -> T {
    lit::<T>(0.5772156649015329) + lit::<T>(-4.942915152430645e-18)
}

/// `Some(n)` when `x = n/2` for a positive integer `n` small enough to sum directly.
fn positive_half_integer<T: Scalar>(x: T) -> Option<u32> {
    let twice = x + x;
    if twice > T::zero() && twice == twice.floor() && twice < lit(2000.0) {
        twice.to_u32()
    } else {
        None
    }
}

pub(crate) fn gamma<T: Scalar>(x: T) -> T {
    match positive_half_integer(x) {
        Some(twice) => {
            // Γ(1) = 1, Γ(1/2) = √π, then Γ(x+1) = x Γ(x).
            let (mut acc, mut arg) = if twice % 2 == 0 {
                (T::one(), T::one())
            } else {
                (T::PI().sqrt(), lit::<T>(0.5))
            };
            while arg < x {
                acc = acc * arg;
                arg = arg + T::one();
            }
            acc
        }
        None => lit(statrs::function::gamma::gamma(crate::scalar::to_f64(x))),
    }
}

/// `1/Γ(x)`, zero at the poles.
pub(crate) fn recip_gamma<T: Scalar>(x: T) -> T {
    if x <= T::zero() && x == x.floor() {
        T::zero()
    } else {
        T::one() / gamma(x)
    }
}

pub(crate) fn digamma<T: Scalar>(x: T) -> T {
    match positive_half_integer(x) {
        Some(twice) => {
            // ψ(1) = -γ, ψ(1/2) = -γ - 2 ln 2, then ψ(x+1) = ψ(x) + 1/x.
            let (mut acc, mut arg) = if twice % 2 == 0 {
                (-euler_gamma::<T>(), T::one())
            } else {
                (-euler_gamma::<T>() - lit::<T>(2.0) * T::LN_2(), lit::<T>(0.5))
            };
            while arg < x {
                acc = acc + T::one() / arg;
                arg = arg + T::one();
            }
            acc
        }
        None => lit(statrs::function::gamma::digamma(crate::scalar::to_f64(x))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Float;

    #[test]
    fn closed_forms_match_library() {
        for i in 1..40 {
            let x = i as f64 * 0.5;
            let g = gamma(x);
            let r = statrs::function::gamma::gamma(x);
            // The library Lanczos fit is only good to about 1e-13.
            assert!(((g - r) / r).abs() < 1e-12, "gamma({x}) {g} {r}");
            let d = digamma(x);
            let r = statrs::function::gamma::digamma(x);
            assert!((d - r).abs() < 1e-13, "digamma({x})");
        }
        let g = gamma(crate::scalar::lit::<crate::DoubleDouble>(14.5));
        let e: crate::DoubleDouble = "23092317922.314238411890908896".parse().unwrap();
        assert!(((g - e) / e).abs() < crate::scalar::lit(1e-30));
        let d = digamma(crate::scalar::lit::<crate::DoubleDouble>(14.5));
        let e: crate::DoubleDouble = "2.63926972534898612222451441581".parse().unwrap();
        assert!((d - e).abs() < crate::scalar::lit(1e-29), "{:?}", d - e);
        assert!((gamma(0.3f64) - 2.991568987687590).abs() < 1e-13);
        assert_eq!(recip_gamma(-2.0), 0.0);
    }
}
