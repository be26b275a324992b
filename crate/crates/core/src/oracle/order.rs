use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Rank-2 multi-order, stored canonically with `k1 <= k2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rank2Order {
    k1: u32,
    k2: u32,
}

impl Rank2Order {
    /// Orders are symmetric in `(k1, k2)`, so the pair is sorted on construction.
    pub fn new(a: u32, b: u32) -> Self {
        Self { k1: a.min(b), k2: a.max(b) }
    }

    pub fn k1(self) -> u32 {
        self.k1
    }

    pub fn k2(self) -> u32 {
        self.k2
    }

    /// `k1 + k2`.
    pub fn total(self) -> u32 {
        self.k1 + self.k2
    }

    /// Number of extra terms in the series: `floor((k2 - k1) / 2)`.
    pub fn s(self) -> u32 {
        (self.k2 - self.k1) / 2
    }

    /// True for the diagonal and first off-diagonal orders, `k2 - k1 <= 1`.
    pub fn near_diagonal(self) -> bool {
        self.k2 - self.k1 <= 1
    }
}

/// Rank and (multi-)order of a Ξ-function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum XiOrder {
    Rank1(u32),
    Rank2(Rank2Order),
}

impl XiOrder {
    pub fn rank1(k: u32) -> Self {
        Self::Rank1(k)
    }

    pub fn rank2(k1: u32, k2: u32) -> Self {
        Self::Rank2(Rank2Order::new(k1, k2))
    }

    pub fn rank(self) -> u32 {
        match self {
            Self::Rank1(_) => 1,
            Self::Rank2(_) => 2,
        }
    }

    /// Orders in canonical form, one per angle.
    pub fn orders(self) -> Vec<u32> {
        match self {
            Self::Rank1(k) => vec![k],
            Self::Rank2(o) => vec![o.k1, o.k2],
        }
    }

    /// The zero order of the same rank.
    pub fn zero_of_rank(self) -> Self {
        match self {
            Self::Rank1(_) => Self::Rank1(0),
            Self::Rank2(_) => Self::rank2(0, 0),
        }
    }

    pub fn from_orders(orders: &[u32]) -> Result<Self> {
        match *orders {
            [k] => Ok(Self::Rank1(k)),
            [a, b] => Ok(Self::rank2(a, b)),
            _ => Err(Error::Parameter(format!("expected one or two orders, got {}", orders.len()))),
        }
    }
}

impl fmt::Display for XiOrder {
    /// `k` for rank 1, `k1,k2` for rank 2.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rank1(k) => write!(f, "{k}"),
            Self::Rank2(o) => write!(f, "{},{}", o.k1, o.k2),
        }
    }
}

impl FromStr for XiOrder {
    type Err = Error;

    /// Parses `k` or `k1,k2`.
    fn from_str(s: &str) -> Result<Self> {
        let orders = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parameter(format!("invalid order '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_orders(&orders)
    }
}

/// Order, axial offset and radial argument of the cylindrical-domain function
/// `∫₀^{2π} cos(kθ) [1 + ζ² + x² - 2x cos θ]^{-1/2} dθ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylindricalParams<T> {
    k: u32,
    zeta: T,
    x: T,
}

impl<T: Scalar> CylindricalParams<T> {
    pub fn new(k: u32, zeta: T, x: T) -> Result<Self> {
        if !(zeta >= T::zero()) || !(x >= T::zero()) || !zeta.is_finite() || !x.is_finite() {
            return Err(Error::Domain(format!("need finite ζ ≥ 0 and x ≥ 0, got ζ={zeta:?}, x={x:?}")));
        }
        if zeta == T::zero() && x == T::one() {
            return Err(Error::Domain("ζ = 0, x = 1 is the singular case".into()));
        }
        Ok(Self { k, zeta, x })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn zeta(&self) -> T {
        self.zeta
    }

    pub fn x(&self) -> T {
        self.x
    }

    /// Squared distance of closest approach, `ζ² + (1 - x)²`.
    pub(crate) fn gap_squared(&self) -> T {
        let d = T::one() - self.x;
        self.zeta * self.zeta + d * d
    }
}
