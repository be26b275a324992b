use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::params::PfqParams;
use super::pochhammer::pochhammer;
use crate::error::{Error, Result};
use crate::Rational;

/// Shorthand for the rational `num / den`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact value of a terminating series in rational arithmetic.
pub fn pfq_terminating_exact(params: &PfqParams<Rational>) -> Result<Rational> {
    let degree = params
        .degree()
        .ok_or_else(|| Error::Parameter("series does not terminate".into()))?;
    let z = params.argument();
    let mut term = Rational::one();
    let mut sum = Rational::one();
    for m in 0..degree {
        let mm = Rational::from_integer(BigInt::from(m));
        for a in params.numerators() {
            term *= a + &mm;
        }
        for b in params.denominators() {
            term /= b + &mm;
        }
        term = term * z / (mm + Rational::one());
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    Ok(sum)
}

/// Both sides of the balanced `4F3(1)` transformation in exact arithmetic.
///
/// Returns `(4F3(-n, A, B, C; E, F, G; 1),
///           (F-C)_n (G-C)_n / ((F)_n (G)_n) · 4F3(-n, E-A, E-B, C; E, E+F-A-B, E+G-A-B; 1))`.
pub fn whipple_4f3_exact(n: u32, p: [&Rational; 6]) -> Result<(Rational, Rational)> {
    let [a, b, c, e, f, g] = p;
    let minus_n = Rational::from_integer(-BigInt::from(n));
    if &minus_n + a + b + c + Rational::one() != e + f + g {
        return Err(Error::Parameter(format!(
            "unbalanced 4F3: -n+A+B+C+1 != E+F+G for n={n}, A={a}, B={b}, C={c}, E={e}, F={f}, G={g}"
        )));
    }
    let one = Rational::one();
    let lhs = pfq_terminating_exact(&PfqParams::new(
        vec![minus_n.clone(), a.clone(), b.clone(), c.clone()],
        vec![e.clone(), f.clone(), g.clone()],
        one.clone(),
    )?)?;
    let inner = pfq_terminating_exact(&PfqParams::new(
        vec![minus_n, e - a, e - b, c.clone()],
        vec![e.clone(), e + f - a - b, e + g - a - b],
        one,
    )?)?;
    let pref = pochhammer(f - c, n) * pochhammer(g - c, n) / (pochhammer(f.clone(), n) * pochhammer(g.clone(), n));
    Ok((lhs, pref * inner))
}
