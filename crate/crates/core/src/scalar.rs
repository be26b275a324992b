use std::fmt::Debug;

use num_bigint::{BigInt, Sign};
use num_traits::{Float, FloatConst, FromPrimitive, NumCast, ToPrimitive, Zero};

use crate::Rational;

/// Parameter values a hypergeometric series can be built from.
///
/// The only property the series engine needs beyond arithmetic is recognising
/// non-positive integers, which make a series terminate.
pub trait HypParameter: Clone + Debug {
    /// `Some(n)` when the value equals `-n` for a non-negative integer `n`.
    fn nonpositive_integer(&self) -> Option<u64>;
}

macro_rules! float_hyp_parameter {
    ($($t:ty),*) => {$(
        impl HypParameter for $t {
            fn nonpositive_integer(&self) -> Option<u64> {
                let v = *self;
                if v <= <$t>::zero() && v == v.floor() && v.is_finite() {
                    (-v).to_u64()
                } else {
                    None
                }
            }
        }
    )*};
}

float_hyp_parameter!(f32, f64, crate::DoubleDouble);

impl HypParameter for Rational {
    fn nonpositive_integer(&self) -> Option<u64> {
        if self.is_integer() && self.numer().sign() != Sign::Plus {
            (-self.numer()).to_u64()
        } else {
            None
        }
    }
}

/// Floating-point scalar the numerical code is generic over.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumCast + HypParameter + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + NumCast + HypParameter + Send + Sync + 'static
{
}

/// Converts an `f64` literal. Every value passed here is exactly representable.
#[inline]
pub fn lit<T: Scalar>(v: f64) -> T {
    T::from_f64(v).expect("f64 literal representable in scalar type")
}

/// `num / den` evaluated in `T`, so that e.g. 7/3 is correctly rounded in
/// double-double rather than inherited from `f64`.
#[inline]
pub fn ratio<T: Scalar>(num: i64, den: i64) -> T {
    from_i64::<T>(num) / from_i64::<T>(den)
}

#[inline]
pub fn from_i64<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("integer representable in scalar type")
}

#[inline]
pub fn from_usize<T: Scalar>(v: usize) -> T {
    T::from_usize(v).expect("integer representable in scalar type")
}

#[inline]
pub fn to_f64<T: Scalar>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

fn bigint_to_scalar<T: Scalar>(v: &BigInt) -> T {
    // Horner over 32-bit limbs: every partial result is exact until it
    // exceeds the mantissa of T, so the conversion is correctly rounded up to
    // a few ulps in any precision.
    let (sign, digits) = v.to_u32_digits();
    let base = lit::<T>(4294967296.0);
    let mut acc = T::zero();
    for d in digits.iter().rev() {
        acc = acc * base + lit::<T>(*d as f64);
    }
    if sign == Sign::Minus {
        -acc
    } else {
        acc
    }
}

/// Converts an exact rational to `T` with full precision of `T`.
pub fn rational_to_scalar<T: Scalar>(q: &Rational) -> T {
    let num = bigint_to_scalar::<T>(q.numer());
    let den = bigint_to_scalar::<T>(q.denom());
    if num.is_finite() && den.is_finite() {
        return num / den;
    }
    // Both overflow: rescale by a power of two first.
    let shift = q.numer().bits().max(q.denom().bits()) as i64 - 900;
    let (n, d) = if shift > 0 {
        (q.numer() >> shift as usize, q.denom() >> shift as usize)
    } else {
        (q.numer().clone(), q.denom().clone())
    };
    bigint_to_scalar::<T>(&n) / bigint_to_scalar::<T>(&d)
}

/// Largest absolute value in a slice, zero for an empty slice.
pub fn max_abs<T: Scalar>(values: &[T]) -> T {
    values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
}

/// Residual normalisation used by every identity check: `|value| / max(1, |reference|)`.
pub fn normalized_by_reference<T: Scalar>(difference: T, reference: T) -> T {
    difference.abs() / T::one().max(reference.abs())
}

/// Scale-free normalisation for homogeneous relations: `|Σ terms| / max |term|`.
pub fn normalized_by_terms<T: Scalar>(terms: &[T]) -> T {
    let scale = max_abs(terms);
    if scale == T::zero() {
        return T::zero();
    }
    let total = terms.iter().fold(T::zero(), |acc, &t| acc + t);
    total.abs() / scale
}
