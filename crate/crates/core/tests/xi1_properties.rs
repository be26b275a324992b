use proptest::prelude::*;
use xi_core::oracle::{xi_direct, QuadratureSpec, XiOrder};
use xi_core::xi1::*;
use xi_core::DoubleDouble;

fn calibrated() -> Normalization<f64> {
    Normalization::calibrated(&default_calibration(1).unwrap()).unwrap()
}

/// C(2k, k) / 4^k
fn central_binomial_ratio(k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * (2 * j - 1) as f64 / (2 * j) as f64)
}

#[test]
fn calibrated_series_matches_quadrature() {
    let norm = calibrated();
    let spec = QuadratureSpec::<f64>::default().with_tol(1e-12).unwrap();
    for k in [0u32, 1, 3, 7, 10] {
        for x in [0.1, 0.5, 0.9, 0.95] {
            let s = xi1_series(k, x, 1e-15, &norm).unwrap().value;
            let o = xi_direct(XiOrder::rank1(k), x, &spec).unwrap();
            // The quadrature error estimate is absolute, which dominates for tiny values.
            let bound = (1e-10 * o.value.abs()).max(10.0 * o.abs_error);
            assert!((s - o.value).abs() < bound, "k={k} x={x}: {s} vs {}", o.value);
        }
    }
}

#[test]
fn leading_order_at_small_argument() {
    // Only the n = k Legendre term survives as x -> 0: Ξ ≈ (1/2) C(2k,k)/4^k x^k.
    let x: f64 = 1e-4;
    for k in 0..8u32 {
        let v = xi1_series(k, x, 1e-15, &Normalization::paper()).unwrap().value;
        let lead = 0.5 * central_binomial_ratio(k) * x.powi(k as i32);
        assert!((v / lead - 1.0).abs() < 1e-6, "k={k}");
    }
}

#[test]
fn maclaurin_coefficients_have_parity_and_sum_to_series() {
    let x = DoubleDouble::from(0.1);
    for k in 0..=8u32 {
        let coeffs = SeriesCoefficients::new(k, 48);
        for (n, c) in coeffs.coefficients().iter().enumerate() {
            let n = n as u32;
            if n < k || (n - k) % 2 == 1 {
                assert!(num_traits::Zero::is_zero(c), "k={k} n={n}");
            }
        }
        let poly = coeffs.evaluate(x);
        let series = xi1_series(k, x, DoubleDouble::from(1e-30), &Normalization::paper()).unwrap().value;
        let diff = f64::from(num_traits::Float::abs(poly - series));
        assert!(diff < 1e-28, "k={k}: {diff:e}");
    }
}

#[test]
fn lowest_mode_increases_on_the_unit_interval() {
    let norm = Normalization::paper();
    let mut prev = 0.0;
    for i in 0..200 {
        let x = i as f64 * 0.005;
        let v = xi1_series(0, x, 1e-15, &norm).unwrap().value;
        assert!(v > prev, "x={x}");
        prev = v;
    }
}

#[test]
fn residuals_do_not_depend_on_normalization() {
    let (paper, cal) = (Normalization::paper(), calibrated());
    for k in [0u32, 4, 9] {
        for x in [0.2, 0.6, 0.9] {
            let a = xi1_ode_residual(k, x, &paper).unwrap().value;
            let b = xi1_ode_residual(k, x, &cal).unwrap().value;
            assert!(a < 1e-12 && b < 1e-12, "k={k} x={x}");
            let a = xi1_diffdiff_residual(k, x, &paper).unwrap().value;
            let b = xi1_diffdiff_residual(k, x, &cal).unwrap().value;
            assert!(a < 1e-12 && b < 1e-12, "k={k} x={x}");
        }
    }
}

#[test]
fn quadratic_drift_coefficient_fails() {
    let r = xi1_ode_residual_with(0, 0.3, &Normalization::paper(), DriftCoefficient::Quadratic).unwrap();
    assert!(r.value > 1e-3);
}

#[test]
fn rank_mismatch_is_rejected() {
    let rank2 = Normalization::calibrated(&default_calibration::<f64>(2).unwrap()).unwrap();
    assert!(matches!(xi1_series(0, 0.5, 1e-15, &rank2), Err(xi_core::Error::Parameter(_))));
    assert!(calibrate_normalization(1, &[0.1, 0.2, 0.3, 0.4, 0.5], &[XiOrder::rank2(0, 0)]).is_err());
}

#[test]
fn disjoint_sample_sets_agree() {
    let other = default_samples(1, 1).unwrap();
    let b = calibrate_normalization::<f64>(1, &other.xs, &other.orders).unwrap();
    let a = default_calibration::<f64>(1).unwrap();
    assert!((a.constant - b.constant).abs() < 1e-8);
    assert!(b.spread < CALIBRATION_SPREAD_LIMIT);
}

#[test]
fn domain_is_half_open() {
    let n = Normalization::paper();
    assert!(xi1_series(0, 1.0, 1e-15, &n).is_err());
    assert!(xi1_series(0, -0.1, 1e-15, &n).is_err());
    assert_eq!(xi1_series(0, 0.0, 1e-15, &n).unwrap().value, 0.5);
    assert_eq!(xi1_series(3, 0.0, 1e-15, &n).unwrap().value, 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn double_double_agrees_with_f64(k in 0u32..12, x in 0.0f64..0.99) {
        let n64 = Normalization::paper();
        let ndd = Normalization::<DoubleDouble>::paper();
        let a = xi1_series(k, x, 1e-15, &n64).unwrap().value;
        let b = f64::from(xi1_series(k, DoubleDouble::from(x), DoubleDouble::from(1e-30), &ndd).unwrap().value);
        prop_assert!((a - b).abs() <= 1e-13 * b.abs(), "{a} vs {b}");
    }

    #[test]
    fn equations_hold_everywhere(k in 0u32..=10, x in 0.02f64..0.98) {
        let n = Normalization::paper();
        prop_assert!(xi1_ode_residual(k, x, &n).unwrap().value < 1e-10);
        prop_assert!(xi1_diffdiff_residual(k, x, &n).unwrap().value < 1e-10);
    }

    #[test]
    fn values_decrease_with_order(k in 0u32..12, x in 0.01f64..0.99) {
        let n = Normalization::paper();
        let a = xi1_series(k, x, 1e-15, &n).unwrap().value;
        let b = xi1_series(k + 1, x, 1e-15, &n).unwrap().value;
        prop_assert!(a > b && b > 0.0);
    }
}
