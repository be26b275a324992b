use crate::error::{Error, Result};
use crate::scalar::{HypParameter, Scalar};

/// Numerator and denominator parameters plus argument of a `pFq` series.
#[derive(Debug, Clone, PartialEq)]
pub struct PfqParams<T> {
    numerators: Vec<T>,
    denominators: Vec<T>,
    argument: T,
    /// `1 - argument`, when the caller knows it more accurately than the subtraction.
    complement: Option<T>,
}

impl<T: HypParameter> PfqParams<T> {
    pub const MAX_NUMERATORS: usize = 4;
    pub const MAX_DENOMINATORS: usize = 3;

    pub fn new(numerators: Vec<T>, denominators: Vec<T>, argument: T) -> Result<Self> {
        if numerators.len() > Self::MAX_NUMERATORS || denominators.len() > Self::MAX_DENOMINATORS {
            return Err(Error::Parameter(format!(
                "{}F{} exceeds the supported 4F3",
                numerators.len(),
                denominators.len()
            )));
        }
        let params = Self { numerators, denominators, argument, complement: None };
        let degree = params.degree();
        for b in &params.denominators {
            if let Some(pole) = b.nonpositive_integer() {
                // (b)_m vanishes once m > |b|; that is harmless only if the series
                // has already stopped.
                if degree.map_or(true, |n| n > pole || pole == 0) {
                    return Err(Error::Parameter(format!(
                        "denominator parameter {b:?} is a non-positive integer"
                    )));
                }
            }
        }
        Ok(params)
    }

    pub fn numerators(&self) -> &[T] {
        &self.numerators
    }

    pub fn denominators(&self) -> &[T] {
        &self.denominators
    }

    pub fn argument(&self) -> &T {
        &self.argument
    }

    pub fn complement(&self) -> Option<&T> {
        self.complement.as_ref()
    }

    /// `(p, q)` of the series.
    pub fn order(&self) -> (usize, usize) {
        (self.numerators.len(), self.denominators.len())
    }

    /// True iff some numerator is a non-positive integer.
    pub fn terminating(&self) -> bool {
        self.degree().is_some()
    }

    /// Polynomial degree of a terminating series.
    pub fn degree(&self) -> Option<u64> {
        self.numerators.iter().filter_map(HypParameter::nonpositive_integer).min()
    }
}

impl<T: Scalar> PfqParams<T> {
    /// Supplies `1 - argument` computed without cancellation.
    pub fn with_complement(mut self, one_minus_argument: T) -> Self {
        self.complement = Some(one_minus_argument);
        self
    }

    pub(crate) fn complement_or_default(&self) -> T {
        self.complement.unwrap_or(T::one() - self.argument)
    }

    /// All parameters shifted by `k` (the parameter pattern of the `k`-th derivative).
    pub(crate) fn shifted(&self, k: u32) -> Self {
        let kk = T::from_u32(k).expect("small integer");
        Self {
            numerators: self.numerators.iter().map(|&a| a + kk).collect(),
            denominators: self.denominators.iter().map(|&b| b + kk).collect(),
            argument: self.argument,
            complement: self.complement,
        }
    }
}

/// Value of a numerical evaluation with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult<T> {
    pub value: T,
    pub abs_error: T,
    /// Series terms or quadrature panels used.
    pub terms_used: usize,
    pub converged: bool,
}

impl<T: Scalar> EvalResult<T> {
    pub fn exact(value: T) -> Self {
        Self { value, abs_error: T::zero(), terms_used: 1, converged: true }
    }

    /// Multiplies value and error by a constant.
    pub fn scaled(self, factor: T) -> Self {
        Self { value: self.value * factor, abs_error: self.abs_error * factor.abs(), ..self }
    }

    /// Sum of two independent evaluations.
    pub fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            abs_error: self.abs_error + other.abs_error,
            terms_used: self.terms_used + other.terms_used,
            converged: self.converged && other.converged,
        }
    }

    /// True when the error estimate is within `tol * max(1, |value|)`.
    pub fn within(&self, tol: T) -> bool {
        self.abs_error <= tol * T::one().max(self.value.abs())
    }
}

/// Normalised residual of an identity check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual<T> {
    pub value: T,
    /// False if any series or quadrature feeding the residual failed to converge.
    pub converged: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_pole_denominators() {
        assert!(PfqParams::new(vec![1.0, 1.0], vec![-2.0], 0.5).is_err());
        assert!(PfqParams::new(vec![1.0], vec![0.0], 0.5).is_err());
        // Series stops at degree 1 before (-2)_m reaches zero.
        assert!(PfqParams::new(vec![-1.0, 1.0], vec![-2.0], 0.5).is_ok());
        assert!(PfqParams::new(vec![1.0; 5], vec![1.0], 0.5).is_err());
    }

    #[test]
    fn terminating_flag() {
        let p = PfqParams::new(vec![-3.0, 0.5], vec![1.5], 0.2).unwrap();
        assert!(p.terminating());
        assert_eq!(p.degree(), Some(3));
        let p = PfqParams::new(vec![0.5, 0.5], vec![1.0], 0.2).unwrap();
        assert!(!p.terminating());
    }
}
