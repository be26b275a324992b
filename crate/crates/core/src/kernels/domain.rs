use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, Scalar};

/// Overall constant and radial measure of the reduced radial operator
/// `c ∫ ρ^p [u(r)φ(ρ)Z^0(r,ρ) - u(ρ)φ(r)Z^k(r,ρ)] dρ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    /// `c = 2^N N^{-N/2}`, `p = N`: the angular reduction of the
    /// `(N+1)`-dimensional operator through the isometric embedding
    /// `(r/√N)(cos θ_l, sin θ_l)`. Agrees with direct quadrature of the full operator.
    #[default]
    Embedded,
    /// `c = (2N-1) / (2^N N! √N)`, `p = 2N-1`.
    Verbatim,
}

impl Convention {
    pub fn constant<T: Scalar>(self, rank: u32) -> T {
        let n = from_usize::<T>(rank as usize);
        match self {
            Self::Embedded => lit::<T>(2.0).powi(rank as i32) * n.powf(-n * lit(0.5)),
            Self::Verbatim => {
                let fact = (1..=rank).fold(T::one(), |acc, i| acc * from_usize(i as usize));
                (lit::<T>(2.0) * n - T::one()) / (lit::<T>(2.0).powi(rank as i32) * fact * n.sqrt())
            }
        }
    }

    pub fn measure_power(self, rank: u32) -> u32 {
        match self {
            Self::Embedded => rank,
            Self::Verbatim => 2 * rank - 1,
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "embedded" => Ok(Self::Embedded),
            "verbatim" => Ok(Self::Verbatim),
            other => Err(Error::Parameter(format!("unknown convention `{other}`"))),
        }
    }
}

impl std::fmt::Display for Convention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Embedded => "embedded",
            Self::Verbatim => "verbatim",
        })
    }
}

/// Radial interval `[inner, outer]` of a disk or annulus (rank 1) or a
/// spherical ring (rank 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelDomain<T> {
    rank: u32,
    inner: T,
    outer: T,
    convention: Convention,
}

impl<T: Scalar> KernelDomain<T> {
    pub fn new(rank: u32, inner: T, outer: T) -> Result<Self> {
        if rank != 1 && rank != 2 {
            return Err(Error::Parameter(format!("rank must be 1 or 2, got {rank}")));
        }
        if !(inner >= T::zero() && outer > inner && outer.is_finite()) {
            return Err(Error::Parameter(format!("need 0 <= inner < outer, got [{inner:?}, {outer:?}]")));
        }
        Ok(Self { rank, inner, outer, convention: Convention::default() })
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn inner(&self) -> T {
        self.inner
    }

    pub fn outer(&self) -> T {
        self.outer
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert_eq!(Convention::Embedded.constant::<f64>(1), 2.0);
        assert!((Convention::Embedded.constant::<f64>(2) - 2.0).abs() < 1e-15);
        assert_eq!(Convention::Verbatim.constant::<f64>(1), 0.5);
        assert!((Convention::Verbatim.constant::<f64>(2) - 3.0 / (8.0 * 2f64.sqrt())).abs() < 1e-15);
        assert_eq!(Convention::Verbatim.measure_power(2), 3);
    }

    #[test]
    fn domain_validation() {
        assert!(KernelDomain::new(3, 0.0, 1.0).is_err());
        assert!(KernelDomain::new(1, 1.0, 1.0).is_err());
        assert!(KernelDomain::new(2, -0.1, 1.0).is_err());
    }
}
