use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::Rational;

fn binom(n: u32, k: u32) -> BigInt {
    if k > n {
        BigInt::zero()
    } else {
        binomial(BigInt::from(n), BigInt::from(k))
    }
}

/// `(1/π) ∫₀^π cos^p θ cos kθ dθ`: `C(p, (p-k)/2) / 2^p` when `p >= k` with
/// equal parity, zero otherwise.
pub fn cosine_power_moment(p: u32, k: u32) -> Rational {
    if p < k || (p - k) % 2 == 1 {
        return Rational::zero();
    }
    Rational::new(binom(p, (p - k) / 2), BigInt::one() << p as usize)
}

/// `A_l(k1, k2) / π²` by expanding `(cos θ₁ + cos θ₂)^l` binomially and
/// integrating each product of powers exactly.
pub fn a_expansion(l: u32, k1: u32, k2: u32) -> Rational {
    (0..=l).fold(Rational::zero(), |acc, s| {
        acc + Rational::from_integer(binom(l, s)) * cosine_power_moment(s, k1) * cosine_power_moment(l - s, k2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypcore::rational;

    #[test]
    fn small_moments() {
        assert_eq!(cosine_power_moment(0, 0), rational(1, 1));
        assert_eq!(cosine_power_moment(2, 0), rational(1, 2));
        assert_eq!(cosine_power_moment(3, 1), rational(3, 8));
        assert_eq!(cosine_power_moment(3, 2), rational(0, 1));
        assert_eq!(a_expansion(2, 1, 1), rational(1, 2));
        assert_eq!(a_expansion(2, 2, 0), rational(1, 4));
    }
}
