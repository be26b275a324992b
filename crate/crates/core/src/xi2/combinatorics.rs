use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::hypcore::{pochhammer, rational};
use crate::scalar::{rational_to_scalar, Scalar};
use crate::Rational;

/// An exact multiple of π².
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiSquaredRational {
    pub coefficient: Rational,
}

impl PiSquaredRational {
    pub fn new(coefficient: Rational) -> Self {
        Self { coefficient }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero())
    }

    /// `coefficient · π²` in `T`.
    pub fn value<T: Scalar>(&self) -> T {
        rational_to_scalar::<T>(&self.coefficient) * T::PI() * T::PI()
    }
}

impl std::fmt::Display for PiSquaredRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})·π²", self.coefficient)
    }
}

fn binom(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    binomial(BigInt::from(n), BigInt::from(k))
}

fn int(v: u32) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc * int(i))
}

/// `∫₀^π∫₀^π (cos θ₁ + cos θ₂)^l cos(k₁θ₁) cos(k₂θ₂) dθ₁dθ₂` in closed form.
///
/// Zero unless `l >= k₁+k₂` with matching parity; otherwise, with
/// `N = (l-k₁-k₂)/2`, equal to `π² 2^{-l} S_{k₁,k₂}(N)`.
pub fn a_closed(l: u32, k1: u32, k2: u32) -> PiSquaredRational {
    let k = k1 + k2;
    if l < k || (l - k) % 2 == 1 {
        return PiSquaredRational::zero();
    }
    let n = (l - k) / 2;
    let scale = Rational::new(BigInt::one(), BigInt::one() << l as usize);
    PiSquaredRational::new(s_sum_closed(k1, k2, n) * scale)
}

/// `S_{k₁,k₂}(N) = Σ_{m=0}^{N} C(2N+k₁+k₂, 2m+k₁) C(2m+k₁, m) C(2(N-m)+k₂, N-m)`.
pub fn s_sum_direct(k1: u32, k2: u32, n: u32) -> Rational {
    let total = 2 * n + k1 + k2;
    let sum = (0..=n).fold(BigInt::zero(), |acc, m| {
        acc + binom(total, 2 * m + k1) * binom(2 * m + k1, m) * binom(2 * (n - m) + k2, n - m)
    });
    Rational::from_integer(sum)
}

/// Hypergeometric closed form
/// `C(k₁+k₂, k₁) ((k₁+k₂+1)_{2N})² / ((k₁+1)_N (k₂+1)_N (k₁+k₂+1)_N N!)`.
pub fn s_sum_closed(k1: u32, k2: u32, n: u32) -> Rational {
    let k = k1 + k2;
    let rise = pochhammer(int(k + 1), 2 * n);
    let den = pochhammer(int(k1 + 1), n) * pochhammer(int(k2 + 1), n) * pochhammer(int(k + 1), n) * factorial(n);
    Rational::from_integer(binom(k, k1)) * rise.clone() * rise / den
}

/// Checks the first-order recurrence
/// `S(N+1)(N+1)(N+k₁+1)(N+k₂+1)(N+k₁+k₂+1) = (2N+k₁+k₂+1)²(2N+k₁+k₂+2)² S(N)`
/// on directly summed values.
pub fn s_sum_recurrence_check(k1: u32, k2: u32, n: u32) -> bool {
    let k = k1 + k2;
    let lhs = s_sum_direct(k1, k2, n + 1) * int(n + 1) * int(n + k1 + 1) * int(n + k2 + 1) * int(n + k + 1);
    let a = int(2 * n + k + 1);
    let b = int(2 * n + k + 2);
    let rhs = a.clone() * a * b.clone() * b * s_sum_direct(k1, k2, n);
    lhs == rhs
}

/// Exact coefficient of `x^{2j} 3F2(...)` in the finite sum of the rank-2 series:
/// `((k₁-k₂)/2)_j ((k₁-k₂+1)/2)_j (k₁+k₂+1/2)_{2j} / ((k₁+1)_j (k₂+1)_j (k₁+k₂+1)_j j!)`.
pub(crate) fn inner_coefficient(k1: u32, k2: u32, j: u32) -> Rational {
    let d = k1 as i64 - k2 as i64;
    let k = (k1 + k2) as i64;
    let num = pochhammer(rational(d, 2), j) * pochhammer(rational(d + 1, 2), j) * pochhammer(rational(2 * k + 1, 2), 2 * j);
    if num.is_zero() {
        return num;
    }
    let den = pochhammer(int(k1 + 1), j) * pochhammer(int(k2 + 1), j) * pochhammer(int(k1 + k2 + 1), j) * factorial(j);
    num / den
}

/// Exact part of the prefactor `π² (1/2)_K 2^K / (4^{K+1} k₁! k₂!)`, `K = k₁+k₂`,
/// without the `π²`.
pub(crate) fn outer_coefficient(k1: u32, k2: u32) -> Rational {
    let k = k1 + k2;
    let num = pochhammer(rational(1, 2), k) * Rational::from_integer(BigInt::one() << k as usize);
    let den = Rational::from_integer(BigInt::one() << (2 * (k + 1)) as usize) * factorial(k1) * factorial(k2);
    num / den
}
