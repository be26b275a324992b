use crate::error::{Error, Result};
use crate::hypcore::default_tolerance;
use crate::oracle::{xi_direct, QuadratureSpec, Rank2Order, XiOrder};
use crate::scalar::{lit, to_f64, Scalar};
use crate::xi2::xi2_series;

use super::normalization::{Calibration, Normalization};
use super::series::xi1_series;

/// Largest accepted relative spread of the per-sample ratios.
pub const CALIBRATION_SPREAD_LIMIT: f64 = 1e-6;

const MIN_SAMPLES: usize = 5;
const MAX_SAMPLE_X: f64 = 0.9;

/// Sample grid for a calibration run: every order is paired with every `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationSamples {
    pub orders: Vec<XiOrder>,
    pub xs: Vec<f64>,
}

/// Two disjoint built-in sample sets per rank (`set` is 0 or 1).
pub fn default_samples(rank: u32, set: usize) -> Result<CalibrationSamples> {
    let (orders, xs): (Vec<XiOrder>, Vec<f64>) = match (rank, set) {
        (1, 0) => ((0..=4).map(XiOrder::Rank1).collect(), vec![0.1, 0.3, 0.5, 0.7, 0.85]),
        (1, 1) => ([5, 6, 8].map(XiOrder::Rank1).to_vec(), vec![0.2, 0.45, 0.6, 0.8]),
        (2, 0) => (
            [(0, 0), (0, 1), (1, 1), (0, 2)].map(|(a, b)| XiOrder::Rank2(Rank2Order::new(a, b))).to_vec(),
            vec![0.15, 0.4, 0.65, 0.85],
        ),
        (2, 1) => (
            [(1, 2), (2, 2), (1, 3), (0, 4)].map(|(a, b)| XiOrder::Rank2(Rank2Order::new(a, b))).to_vec(),
            vec![0.25, 0.5, 0.75, 0.8],
        ),
        _ => return Err(Error::Parameter(format!("no default sample set {set} for rank {rank}"))),
    };
    Ok(CalibrationSamples { orders, xs })
}

/// Fits the constant `c` with `c · series ≈ quadrature` over all
/// `(order, x)` pairs of the cartesian product of the inputs.
///
/// Fails with [`Error::CalibrationInconsistent`] when the per-sample ratios
/// spread by more than [`CALIBRATION_SPREAD_LIMIT`], i.e. when the two sides do
/// not differ by a single global constant.
pub fn calibrate_normalization<T: Scalar>(
    rank: u32,
    sample_xs: &[T],
    sample_orders: &[XiOrder],
) -> Result<Calibration<T>> {
    if rank != 1 && rank != 2 {
        return Err(Error::Parameter(format!("rank must be 1 or 2, got {rank}")));
    }
    if let Some(o) = sample_orders.iter().find(|o| o.rank() != rank) {
        return Err(Error::Parameter(format!("order {o} does not have rank {rank}")));
    }
    if let Some(x) = sample_xs.iter().find(|&&x| !(x > T::zero() && x < lit(MAX_SAMPLE_X))) {
        return Err(Error::Parameter(format!("calibration samples must lie in (0, {MAX_SAMPLE_X}), got {x:?}")));
    }
    let count = sample_xs.len() * sample_orders.len();
    if count < MIN_SAMPLES {
        return Err(Error::Parameter(format!("calibration needs at least {MIN_SAMPLES} samples, got {count}")));
    }
    let spec = QuadratureSpec::<T>::default();
    let tol = default_tolerance::<T>();
    let paper = Normalization::<T>::paper();
    let mut pairs = Vec::with_capacity(count);
    for &order in sample_orders {
        for &x in sample_xs {
            let series = match order {
                XiOrder::Rank1(k) => xi1_series(k, x, tol, &paper)?,
                XiOrder::Rank2(o) => xi2_series(o, x, tol)?,
            };
            let oracle = xi_direct(order, x, &spec)?;
            pairs.push((series.value, oracle.value));
        }
    }
    let (num, den) = pairs.iter().fold((T::zero(), T::zero()), |(n, d), &(s, o)| (n + s * o, d + s * s));
    let constant = num / den;
    let spread = pairs.iter().fold(T::zero(), |m, &(s, o)| m.max((o / s - constant).abs())) / constant.abs();
    if !(spread <= lit(CALIBRATION_SPREAD_LIMIT)) {
        return Err(Error::CalibrationInconsistent {
            constant: to_f64(constant),
            spread: to_f64(spread),
            limit: CALIBRATION_SPREAD_LIMIT,
        });
    }
    Ok(Calibration { rank, constant, spread, samples: count })
}

/// Calibration on the first built-in sample set.
pub fn default_calibration<T: Scalar>(rank: u32) -> Result<Calibration<T>> {
    let samples = default_samples(rank, 0)?;
    let xs: Vec<T> = samples.xs.iter().map(|&x| T::from_f64(x).expect("sample point")).collect();
    calibrate_normalization(rank, &xs, &samples.orders)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_constant_is_pi() {
        let c = default_calibration::<f64>(1).unwrap();
        assert!((c.constant - std::f64::consts::PI).abs() < 1e-11, "{}", c.constant);
        assert!(c.spread < 1e-11);
    }

    #[test]
    fn too_few_samples() {
        let r = calibrate_normalization(1, &[0.2f64, 0.4], &[XiOrder::Rank1(0), XiOrder::Rank1(1)]);
        assert!(matches!(r, Err(Error::Parameter(_))));
        let r = calibrate_normalization(1, &[0.95f64; 5], &[XiOrder::Rank1(0)]);
        assert!(matches!(r, Err(Error::Parameter(_))));
    }
}
