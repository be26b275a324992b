use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, to_f64, Scalar};

use super::domain::KernelDomain;

/// Samples used to validate a field given as a closure.
const FUNCTION_PROBES: usize = 1025;

/// Positive radial field `φ(r)` defining the operator.
#[derive(Clone)]
pub enum RadialField<T> {
    Constant(T),
    /// Samples `(r_i, φ_i)` with strictly increasing `r_i`, linearly interpolated.
    Sampled { radii: Vec<T>, values: Vec<T> },
    Function(Arc<dyn Fn(T) -> T + Send + Sync>),
}

impl<T: Scalar> fmt::Debug for RadialField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant(c) => write!(f, "Constant({c:?})"),
            Self::Sampled { radii, .. } => write!(f, "Sampled({} points)", radii.len()),
            Self::Function(_) => f.write_str("Function"),
        }
    }
}

impl<T: Scalar> RadialField<T> {
    pub fn constant(value: T) -> Self {
        Self::Constant(value)
    }

    pub fn sampled(radii: Vec<T>, values: Vec<T>) -> Result<Self> {
        if radii.len() != values.len() || radii.len() < 2 {
            return Err(Error::Validation(format!(
                "sampled field needs at least two (r, phi) pairs of equal length, got {} and {}",
                radii.len(),
                values.len()
            )));
        }
        if let Some(i) = (1..radii.len()).find(|&i| !(radii[i] > radii[i - 1])) {
            return Err(Error::Validation(format!("sample radii must increase strictly (row {})", i + 1)));
        }
        Ok(Self::Sampled { radii, values })
    }

    pub fn function(f: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        Self::Function(Arc::new(f))
    }

    /// `φ(r)`; sampled fields interpolate linearly and hold the end values outside the samples.
    pub fn eval(&self, r: T) -> T {
        match self {
            Self::Constant(c) => *c,
            Self::Function(f) => f(r),
            Self::Sampled { radii, values } => {
                let n = radii.len();
                if r <= radii[0] {
                    return values[0];
                }
                if r >= radii[n - 1] {
                    return values[n - 1];
                }
                let i = radii.partition_point(|&t| t <= r);
                let t = (r - radii[i - 1]) / (radii[i] - radii[i - 1]);
                values[i - 1] + t * (values[i] - values[i - 1])
            }
        }
    }

    /// Checks positivity and uniform separation from zero on the domain and,
    /// for sampled fields, coverage and a finite Lipschitz estimate.
    /// Returns the minimum `φ_min > 0`.
    pub fn validate(&self, domain: &KernelDomain<T>) -> Result<T> {
        let probes: Vec<(T, T)> = match self {
            Self::Constant(c) => vec![(domain.inner(), *c)],
            Self::Sampled { radii, values } => {
                let tol = T::epsilon() * domain.outer() * from_usize(16);
                if radii[0] > domain.inner() + tol || radii[radii.len() - 1] < domain.outer() - tol {
                    return Err(Error::Validation(format!(
                        "samples cover [{}, {}] but the domain is [{}, {}]",
                        to_f64(radii[0]),
                        to_f64(radii[radii.len() - 1]),
                        to_f64(domain.inner()),
                        to_f64(domain.outer())
                    )));
                }
                let lipschitz = (1..radii.len()).fold(T::zero(), |m, i| {
                    m.max(((values[i] - values[i - 1]) / (radii[i] - radii[i - 1])).abs())
                });
                if !lipschitz.is_finite() {
                    return Err(Error::Validation("sampled field has no finite Lipschitz bound".into()));
                }
                radii.iter().copied().zip(values.iter().copied()).collect()
            }
            Self::Function(f) => {
                let span = domain.outer() - domain.inner();
                let last = from_usize::<T>(FUNCTION_PROBES - 1);
                (0..FUNCTION_PROBES)
                    .map(|i| {
                        let r = domain.inner() + span * from_usize::<T>(i) / last;
                        (r, f(r))
                    })
                    .collect()
            }
        };
        let mut min = T::infinity();
        for (r, v) in probes {
            if !(v.is_finite() && v > T::zero()) {
                return Err(Error::Validation(format!(
                    "field must be finite and positive, got phi({}) = {}",
                    to_f64(r),
                    to_f64(v)
                )));
            }
            min = min.min(v);
        }
        Ok(min)
    }
}
