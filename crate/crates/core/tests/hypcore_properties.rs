use proptest::prelude::*;
use xi_core::hypcore::*;
use xi_core::{DoubleDouble, PfqParams};

fn f(nums: Vec<f64>, dens: Vec<f64>, z: f64) -> f64 {
    pfq(&PfqParams::new(nums, dens, z).unwrap(), 1e-15).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matching_parameter_reduces_order(a in 0.1f64..3.0, b in 0.1f64..3.0, c in 0.2f64..4.0, d in 0.5f64..4.0, z in -0.9f64..0.7) {
        let three = f(vec![a, b, c], vec![c, d], z);
        let two = f(vec![a, b], vec![d], z);
        prop_assert!((three - two).abs() <= 1e-12 * two.abs().max(1.0), "{three} vs {two}");
    }

    #[test]
    fn terminating_exact_matches_float(n in 0i64..12, bn in 1i64..30, cn in 1i64..30, zn in -9i64..9) {
        let exact = pfq_terminating_exact(&PfqParams::new(
            vec![rational(-n, 1), rational(bn, 4)],
            vec![rational(cn, 3)],
            rational(zn, 10),
        ).unwrap()).unwrap();
        let float = f(vec![-n as f64, bn as f64 / 4.0], vec![cn as f64 / 3.0], zn as f64 / 10.0);
        let e = xi_core::scalar::rational_to_scalar::<f64>(&exact);
        // Rounding in the float sum is relative to the largest terms, not to the result.
        let (b, c, z) = (bn as f64 / 4.0, cn as f64 / 3.0, zn as f64 / 10.0);
        let mut term = 1.0f64;
        let mut magnitude = 1.0;
        for j in 0..n {
            let j = j as f64;
            term *= (j - n as f64) * (b + j) / ((c + j) * (j + 1.0)) * z;
            magnitude += term.abs();
        }
        prop_assert!((e - float).abs() <= 1e-12 * magnitude, "{e} vs {float}");
    }

    #[test]
    fn derivative_matches_central_difference(a in 0.2f64..3.0, b in 0.2f64..3.0, c in 0.5f64..4.0, d in 0.5f64..4.0, z in -0.8f64..0.6) {
        let p = PfqParams::new(vec![a, b, 0.75], vec![c, d], z).unwrap();
        let d1 = pfq_derivative(&p, 1, 1e-15).unwrap().value;
        let h = 1e-5;
        let g = |t: f64| f(vec![a, b, 0.75], vec![c, d], t);
        let fd = (g(z + h) - g(z - h)) / (2.0 * h);
        prop_assert!((d1 - fd).abs() <= 1e-6 * d1.abs().max(1e-3), "{d1} vs {fd}");
    }

    #[test]
    fn contiguous_relation(a1 in 0.3f64..4.0, a2 in 0.3f64..4.0, a3 in 0.3f64..4.0, b1 in 0.3f64..4.0, b2 in 0.3f64..4.0, y in -0.9f64..0.0) {
        let r = contiguous_3f2_residual([a1, a2, a3], [b1, b2], y, 1e-15).unwrap();
        prop_assert!(r.converged && r.value < 1e-10, "{}", r.value);
    }

    #[test]
    fn balanced_transformation_on_rank2_pattern(n in 0u32..=12, k1 in 0u32..8, k2 in 0u32..8) {
        let (k1, k2) = (k1 as f64, k2 as f64);
        let kk = k1 + k2;
        let p = [(kk + 1.0) / 2.0, (kk + 2.0) / 2.0, n as f64 + kk + 0.5, k1 + 1.0, k2 + 1.0, kk + 1.0];
        let r = whipple_4f3_residual(n, p).unwrap();
        prop_assert!(r.value <= 1e-12, "{}", r.value);
    }
}

#[test]
fn legendre_generating_function() {
    let s: f64 = (0..=60).map(|n| legendre_p(n, 0.2) * 0.3f64.powi(n as i32)).sum();
    assert!((s - 1.0 / 0.97f64.sqrt()).abs() < 1e-14);
    assert_eq!(legendre_p(2, 0.5), -0.125);
}

#[test]
fn pochhammer_examples() {
    assert_eq!(pochhammer(0.5, 3), 1.875);
    assert_eq!(pochhammer(1.0, 5), 120.0);
    assert_eq!(pochhammer(rational(1, 2), 3), rational(15, 8));
}

#[test]
fn elliptic_value_through_agm() {
    // 2F1(1/2, 1/2; 1; k²) = 2K(k)/π = 1/AGM(1, √(1-k²)).
    let (mut a, mut g) = (1.0f64, 0.75f64.sqrt());
    for _ in 0..8 {
        (a, g) = ((a + g) / 2.0, (a * g).sqrt());
    }
    let v = f(vec![0.5, 0.5], vec![1.0], 0.25);
    assert!((v - 1.0 / a).abs() < 1e-15);
}

#[test]
fn balanced_4f3_exact_value() {
    let p = PfqParams::new(
        vec![rational(-2, 1), rational(9, 2), rational(3, 2), rational(2, 1)],
        vec![rational(2, 1), rational(2, 1), rational(5, 1)],
        rational(1, 1),
    )
    .unwrap();
    assert_eq!(pfq_terminating_exact(&p).unwrap(), rational(53, 320));
}

#[test]
fn double_double_pfq_matches_f64() {
    let dd = pfq(
        &PfqParams::new(
            vec![DoubleDouble::from(0.5), DoubleDouble::from(2.5)],
            vec![DoubleDouble::from(3.0)],
            DoubleDouble::from(0.9),
        )
        .unwrap(),
        DoubleDouble::from(1e-30),
    )
    .unwrap();
    let double = f(vec![0.5, 2.5], vec![3.0], 0.9);
    assert!((f64::from(dd.value) - double).abs() < 1e-14 * double);
}

#[test]
fn unbalanced_transformation_is_a_parameter_error() {
    let err = whipple_4f3_residual(5, [2.0, 2.5, 9.5, 2.0, 4.0, 5.0 + 1e-3]).unwrap_err();
    assert!(matches!(err, xi_core::Error::Parameter(ref m) if m.contains("n=5")), "{err}");
}
