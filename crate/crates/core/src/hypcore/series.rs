use super::jet::Jet;
use super::params::{EvalResult, PfqParams};
use super::pochhammer::pochhammer;
use super::special::{digamma, gamma, recip_gamma};
use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, Scalar};

/// Hard cap on series terms before giving up.
pub const MAX_TERMS: usize = 100_000;

/// Consecutive negligible terms required before the tail estimate is trusted.
const SMALL_RUN: usize = 3;

/// Above this argument `2F1` switches to the `1 - z` connection formulas.
const CONNECTION_THRESHOLD: f64 = 0.75;

/// Below this argument `2F1` is mapped into `[1/3, 1/2)` by the Pfaff transformation.
const PFAFF_THRESHOLD: f64 = -0.5;

/// Default target tolerance: a small multiple of machine epsilon.
pub fn default_tolerance<T: Scalar>() -> T {
    T::epsilon() * lit(64.0)
}

fn check_tolerance<T: Scalar>(tol: T) -> Result<()> {
    if tol.is_finite() && tol > T::zero() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("tolerance must be positive, got {tol:?}")))
    }
}

/// Evaluates `pFq(a; b; z)` for `p <= 4`, `q <= 3`.
///
/// Terminating series are summed exactly up to their degree for any `z`.
/// Otherwise the series must converge: `p <= q`, or `p = q + 1` with
/// `|z| < 1`. `2F1` additionally uses the Pfaff transformation for `z < -1/2`
/// and the `1 - z` connection formulas (including the logarithmic
/// integer-gap case) for `z > 3/4`.
pub fn pfq<T: Scalar>(params: &PfqParams<T>, tol: T) -> Result<EvalResult<T>> {
    check_tolerance(tol)?;
    let z = *params.argument();
    if !z.is_finite() {
        return Err(Error::Domain(format!("argument {z:?} is not finite")));
    }
    if let Some(degree) = params.degree() {
        return Ok(finite_sum(params.numerators(), params.denominators(), z, degree, tol));
    }
    if z == T::zero() {
        return Ok(EvalResult::exact(T::one()));
    }
    let (p, q) = params.order();
    if p > q + 1 {
        return Err(Error::Parameter(format!(
            "non-terminating {p}F{q} diverges for every non-zero argument"
        )));
    }
    if p == q + 1 && z.abs() >= T::one() {
        return Err(Error::Domain(format!(
            "{p}F{q} series requires |z| < 1, got {z:?}"
        )));
    }
    if p == 2 && q == 1 {
        let (a, b, c) = (params.numerators()[0], params.numerators()[1], params.denominators()[0]);
        if z > lit(CONNECTION_THRESHOLD) {
            return hyp2f1_near_one(a, b, c, z, params.complement_or_default(), tol);
        }
        if z < lit(PFAFF_THRESHOLD) {
            let w = T::one() - z;
            let mapped = PfqParams::new(vec![a, c - b], vec![c], z / (z - T::one()))?
                .with_complement(T::one() / w);
            return Ok(pfq(&mapped, tol)?.scaled(w.powf(-a)));
        }
    }
    Ok(power_series(params.numerators(), params.denominators(), z, tol))
}

/// `k`-th derivative in `z`, for `k <= 3`, by the parameter-shift rule
/// `d^k/dz^k pFq(a; b; z) = Π(a)_k / Π(b)_k · pFq(a+k; b+k; z)`.
pub fn pfq_derivative<T: Scalar>(params: &PfqParams<T>, order: u32, tol: T) -> Result<EvalResult<T>> {
    if order > 3 {
        return Err(Error::Parameter(format!("derivative order {order} exceeds 3")));
    }
    if order == 0 {
        return pfq(params, tol);
    }
    let num = params.numerators().iter().fold(T::one(), |acc, &a| acc * pochhammer(a, order));
    if num == T::zero() {
        check_tolerance(tol)?;
        return Ok(EvalResult::exact(T::zero()));
    }
    let den = params.denominators().iter().fold(T::one(), |acc, &b| acc * pochhammer(b, order));
    Ok(pfq(&params.shifted(order), tol)?.scaled(num / den))
}

/// Value and derivatives up to `max_order` (at most 3).
pub fn pfq_jet<T: Scalar>(params: &PfqParams<T>, max_order: u32, tol: T) -> Result<Jet<T>> {
    if max_order > 3 {
        return Err(Error::Parameter(format!("derivative order {max_order} exceeds 3")));
    }
    let mut jet = Jet::zero();
    for k in 0..=max_order {
        let r = pfq_derivative(params, k, tol)?;
        jet.values[k as usize] = r.value;
        jet.abs_error[k as usize] = r.abs_error;
        jet.converged &= r.converged;
        jet.terms_used += r.terms_used;
    }
    Ok(jet)
}

fn term_ratio<T: Scalar>(nums: &[T], dens: &[T], m: usize, z: T) -> T {
    let mf = from_usize::<T>(m);
    let mut r = z / (mf + T::one());
    for &a in nums {
        r = r * (a + mf);
    }
    for &b in dens {
        r = r / (b + mf);
    }
    r
}

fn finite_sum<T: Scalar>(nums: &[T], dens: &[T], z: T, degree: u64, tol: T) -> EvalResult<T> {
    let mut term = T::one();
    let mut sum = T::one();
    let mut l1 = T::one();
    for m in 0..degree as usize {
        term = term * term_ratio(nums, dens, m, z);
        sum = sum + term;
        l1 = l1 + term.abs();
    }
    let abs_error = T::epsilon() * lit(2.0) * from_usize::<T>(degree as usize + 1) * l1;
    EvalResult {
        value: sum,
        abs_error,
        terms_used: degree as usize + 1,
        converged: abs_error <= tol * T::one().max(sum.abs()),
    }
}

/// Plain Maclaurin summation of a convergent non-terminating series.
fn power_series<T: Scalar>(nums: &[T], dens: &[T], z: T, tol: T) -> EvalResult<T> {
    let limit_ratio = if nums.len() == dens.len() + 1 { z.abs() } else { T::zero() };
    let mut term = T::one();
    let mut sum = T::one();
    let mut l1 = T::one();
    let mut small = 0;
    for m in 0..MAX_TERMS {
        let next = term * term_ratio(nums, dens, m, z);
        let r = if term == T::zero() { T::zero() } else { (next / term).abs() };
        term = next;
        sum = sum + term;
        l1 = l1 + term.abs();
        let scale = T::one().max(sum.abs());
        if term.abs() <= tol * scale {
            small += 1;
        } else {
            small = 0;
        }
        if small >= SMALL_RUN {
            let bound = r.max(limit_ratio);
            if bound < T::one() {
                let tail = term.abs() * bound / (T::one() - bound);
                if tail <= tol * scale {
                    return EvalResult {
                        value: sum,
                        abs_error: tail + T::epsilon() * lit(2.0) * l1,
                        terms_used: m + 2,
                        converged: true,
                    };
                }
            }
        }
    }
    EvalResult { value: sum, abs_error: term.abs() * lit(1e3), terms_used: MAX_TERMS, converged: false }
}

/// `2F1(a, b; c; z)` for `z` close to one, with `w = 1 - z` supplied accurately.
fn hyp2f1_near_one<T: Scalar>(a: T, b: T, c: T, z: T, w: T, tol: T) -> Result<EvalResult<T>> {
    let gap = c - a - b;
    let nearest = gap.round();
    if (gap - nearest).abs() > lit::<T>(16.0) * T::epsilon() * T::one().max(c.abs()) {
        return hyp2f1_generic_gap(a, b, c, w, gap, tol);
    }
    let m = nearest.to_i64().expect("integer gap");
    if m < 0 {
        // Euler: F(a,b;c;z) = w^{c-a-b} F(c-a, c-b; c; z), whose gap is -m > 0.
        let euler = PfqParams::new(vec![c - a, c - b], vec![c], z)?.with_complement(w);
        return Ok(pfq(&euler, tol)?.scaled(w.powf(gap)));
    }
    Ok(hyp2f1_log_case(a, b, m as u32, w, tol))
}

/// Two-term connection formula when `c - a - b` is not an integer.
fn hyp2f1_generic_gap<T: Scalar>(a: T, b: T, c: T, w: T, gap: T, tol: T) -> Result<EvalResult<T>> {
    let first = PfqParams::new(vec![a, b], vec![T::one() - gap], w)?;
    let second = PfqParams::new(vec![c - a, c - b], vec![T::one() + gap], w)?;
    let f1 = pfq(&first, tol)?;
    let f2 = pfq(&second, tol)?;
    let g = gamma(c);
    let p1 = g * gamma(gap) * recip_gamma(c - a) * recip_gamma(c - b);
    let p2 = w.powf(gap) * g * gamma(-gap) * recip_gamma(a) * recip_gamma(b);
    Ok(f1.scaled(p1).combine(f2.scaled(p2)))
}

/// Logarithmic connection formula for `c = a + b + m`, `m >= 0` an integer.
fn hyp2f1_log_case<T: Scalar>(a: T, b: T, m: u32, w: T, tol: T) -> EvalResult<T> {
    let mf = T::from_u32(m).expect("small integer");
    let c = a + b + mf;
    let gc = gamma(c);

    // Finite part: Γ(m)Γ(c)/(Γ(a+m)Γ(b+m)) Σ_{n<m} (a)_n (b)_n / (n! (1-m)_n) w^n.
    let mut finite = EvalResult::exact(T::zero());
    if m > 0 {
        let pref = gamma(mf) * gc * recip_gamma(a + mf) * recip_gamma(b + mf);
        let mut term = T::one();
        let mut sum = T::zero();
        let mut l1 = T::zero();
        for n in 0..m as usize {
            sum = sum + term;
            l1 = l1 + term.abs();
            let nf = from_usize::<T>(n);
            term = term * (a + nf) * (b + nf) * w / ((nf + T::one()) * (T::one() - mf + nf));
        }
        finite = EvalResult {
            value: sum * pref,
            abs_error: T::epsilon() * lit::<T>(4.0) * l1 * pref.abs(),
            terms_used: m as usize,
            converged: true,
        };
    }

    // Logarithmic part: -(-w)^m Γ(c)/(Γ(a)Γ(b)) Σ_n (a+m)_n (b+m)_n / (n! (n+m)!) w^n
    //   × [ln w - ψ(n+1) - ψ(n+m+1) + ψ(a+n+m) + ψ(b+n+m)].
    let sign = if m % 2 == 0 { T::one() } else { -T::one() };
    let pref = -sign * w.powi(m as i32) * gc * recip_gamma(a) * recip_gamma(b);
    let ln_w = w.ln();
    let mut psi_n1 = digamma(T::one());
    let mut psi_nm1 = digamma(mf + T::one());
    let mut psi_a = digamma(a + mf);
    let mut psi_b = digamma(b + mf);
    let mut coef = T::one() / gamma(mf + T::one());
    let mut sum = T::zero();
    let mut l1 = T::zero();
    let mut small = 0;
    let mut result = None;
    for n in 0..MAX_TERMS {
        let term = coef * (ln_w - psi_n1 - psi_nm1 + psi_a + psi_b);
        sum = sum + term;
        l1 = l1 + term.abs();
        let scale = T::one().max((sum * pref).abs()) / pref.abs().max(T::min_positive_value());
        if term.abs() <= tol * scale {
            small += 1;
        } else {
            small = 0;
        }
        let nf = from_usize::<T>(n);
        let next = coef * (a + mf + nf) * (b + mf + nf) * w / ((nf + T::one()) * (nf + mf + T::one()));
        if small >= SMALL_RUN && coef != T::zero() {
            // Coefficient ratio tends to w from above or below; the bracket grows only
            // logarithmically, so a slightly inflated geometric bound covers the tail.
            let r = ((next / coef).abs().max(w)) * lit(1.05);
            if r < T::one() {
                let tail = next.abs() * (ln_w.abs() + lit::<T>(2.0) * (nf + mf + a.abs() + b.abs() + lit(2.0)).ln().abs() + lit(2.0)) / (T::one() - r);
                if tail <= tol * scale {
                    result = Some((tail, n + 1));
                    break;
                }
            }
        } else if coef == T::zero() {
            result = Some((T::zero(), n + 1));
            break;
        }
        psi_n1 = psi_n1 + T::one() / (nf + T::one());
        psi_nm1 = psi_nm1 + T::one() / (nf + mf + T::one());
        psi_a = psi_a + T::one() / (a + mf + nf);
        psi_b = psi_b + T::one() / (b + mf + nf);
        coef = next;
    }
    let log_part = match result {
        Some((tail, terms)) => EvalResult {
            value: sum * pref,
            abs_error: (tail + T::epsilon() * lit::<T>(8.0) * l1) * pref.abs(),
            terms_used: terms,
            converged: true,
        },
        None => EvalResult {
            value: sum * pref,
            abs_error: coef.abs() * pref.abs() * lit(1e3),
            terms_used: MAX_TERMS,
            converged: false,
        },
    };
    finite.combine(log_part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DoubleDouble;

    fn f21(a: f64, b: f64, c: f64, z: f64) -> EvalResult<f64> {
        pfq(&PfqParams::new(vec![a, b], vec![c], z).unwrap(), 1e-15).unwrap()
    }

    #[test]
    fn elementary_closed_forms() {
        // 2F1(1,1;2;z) = -ln(1-z)/z.
        for &z in &[-0.9, -0.6, -0.3, 0.2, 0.5, 0.8, 0.95, 0.999] {
            let r = f21(1.0, 1.0, 2.0, z);
            let e = -(1.0 - z as f64).ln() / z;
            assert!(r.converged);
            assert!(((r.value - e) / e).abs() < 1e-13, "z={z}: {} vs {e}", r.value);
        }
        // 1F0(a;;z) = (1-z)^{-a}.
        let r = pfq(&PfqParams::new(vec![0.7], vec![], 0.4).unwrap(), 1e-15).unwrap();
        assert!((r.value - 0.6f64.powf(-0.7)).abs() < 1e-13);
        // 0F0 = exp.
        let r = pfq(&PfqParams::new(vec![], vec![], -3.0).unwrap(), 1e-15).unwrap();
        assert!((r.value - (-3.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn complete_elliptic_integral_agm() {
        // 2F1(1/2,1/2;1;m) = (2/π) K(m), K(m) = π / (2 AGM(1, √(1-m))).
        for &m in &[0.25, 0.7, 0.9, 0.99] {
            let (mut a, mut g) = (1.0f64, (1.0 - m as f64).sqrt());
            for _ in 0..30 {
                let an = 0.5 * (a + g);
                g = (a * g).sqrt();
                a = an;
            }
            let e = 1.0 / a;
            let r = f21(0.5, 0.5, 1.0, m);
            assert!(((r.value - e) / e).abs() < 1e-13, "m={m}");
        }
    }

    #[test]
    fn connection_cases_reference_values() {
        // Reference values from an independent arbitrary-precision evaluation.
        let cases = [
            (0.5, 3.5, 4.0, 0.9, 2.4184234656711132),
            (1.5, 4.5, 7.0, 0.8, 3.4458233016153259),
            (0.3, 0.9, 2.1, 0.95, 1.2472517991067645),
        ];
        for &(a, b, c, z, e) in &cases {
            let near = f21(a, b, c, z);
            assert!(((near.value - e) / e).abs() < 1e-12, "{a} {b} {c} {z}: {}", near.value);
        }
    }

    #[test]
    fn connection_agrees_with_direct_series_at_threshold() {
        for &(a, b, c) in &[(0.5, 2.5, 4.0), (0.5, 0.5, 1.0), (0.3, 1.7, 2.9), (1.5, 2.5, 3.0)] {
            let z = 0.76;
            let conn = f21(a, b, c, z).value;
            let direct = power_series(&[a, b], &[c], z, 1e-16).value;
            assert!(((conn - direct) / direct).abs() < 1e-12, "{a} {b} {c}: {conn} vs {direct}");
        }
    }

    #[test]
    fn double_double_log_case() {
        use num_traits::Float;
        type D = DoubleDouble;
        let (a, b, c, z) = (lit::<D>(0.5), lit::<D>(2.5), lit::<D>(3.0), lit::<D>(0.9));
        let near = pfq(&PfqParams::new(vec![a, b], vec![c], z).unwrap(), lit(1e-30)).unwrap();
        let direct = power_series(&[a, b], &[c], z, lit(1e-31));
        let rel = ((near.value - direct.value) / direct.value).abs();
        assert!(rel < lit(1e-28), "{rel:?}");
    }

    #[test]
    fn derivative_by_parameter_shift() {
        let p = PfqParams::new(vec![0.5, 1.5, 2.0], vec![2.5, 3.0], 0.3).unwrap();
        let h = 1e-4;
        let fd = {
            let f = |z: f64| pfq(&PfqParams::new(vec![0.5, 1.5, 2.0], vec![2.5, 3.0], z).unwrap(), 1e-15).unwrap().value;
            (f(0.3 + h) - f(0.3 - h)) / (2.0 * h)
        };
        let d = pfq_derivative(&p, 1, 1e-15).unwrap().value;
        assert!((d - fd).abs() < 1e-7);
        let zero = PfqParams::new(vec![0.0, 1.0], vec![2.0], 0.3).unwrap();
        assert_eq!(pfq_derivative(&zero, 2, 1e-15).unwrap().value, 0.0);
        assert!(pfq_derivative(&p, 4, 1e-15).is_err());
    }

    #[test]
    fn domain_and_parameter_errors() {
        assert!(matches!(
            pfq(&PfqParams::new(vec![0.5, 0.5, 0.5], vec![1.0, 1.0], 1.0).unwrap(), 1e-14),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            pfq(&PfqParams::new(vec![0.5, 0.5, 0.5], vec![1.0], 0.1).unwrap(), 1e-14),
            Err(Error::Parameter(_))
        ));
        assert!(pfq(&PfqParams::new(vec![0.5], vec![1.0], 0.1).unwrap(), 0.0).is_err());
        // Terminating series are fine outside the unit disk.
        let r = pfq(&PfqParams::new(vec![-2.0, 1.0], vec![1.0], 3.0).unwrap(), 1e-14).unwrap();
        assert_eq!(r.value, 4.0);
    }

    #[test]
    fn error_estimate_meets_tolerance() {
        let r = f21(0.5, 3.5, 4.0, 0.6);
        assert!(r.converged && r.within(1e-14));
        for &tol in &[1e-6f64, 1e-10, 1e-14] {
            let p = PfqParams::new(vec![0.5, 3.5, 1.0], vec![4.0, 2.0], 0.6).unwrap();
            let r = pfq(&p, tol).unwrap();
            let tight = pfq(&p, 1e-16).unwrap();
            assert!(r.converged && r.within(tol));
            assert!((r.value - tight.value).abs() <= tol * tight.value.abs().max(1.0));
        }
    }
}
