use crate::error::{Error, Result};
use crate::scalar::{to_f64, Scalar};

/// Which overall scale a series evaluator reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormalizationMode {
    /// The bare hypergeometric closed form.
    Paper,
    /// The closed form multiplied by a constant fitted against direct quadrature.
    Calibrated,
}

impl std::str::FromStr for NormalizationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Self::Paper),
            "calibrated" => Ok(Self::Calibrated),
            other => Err(Error::Parameter(format!("unknown normalization `{other}`"))),
        }
    }
}

impl std::fmt::Display for NormalizationMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Paper => "paper",
            Self::Calibrated => "calibrated",
        })
    }
}

/// Result of fitting the series to the quadrature oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct Calibration<T> {
    pub rank: u32,
    /// Least-squares constant `c` minimizing `Σ |c·series - oracle|²`.
    pub constant: T,
    /// `max |oracle/series - c| / |c|` over the samples.
    pub spread: T,
    pub samples: usize,
}

/// Overall scale applied by the series evaluators.
///
/// A calibrated normalization can only be built from a [`Calibration`], so
/// its constant always comes from an oracle fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization<T> {
    mode: NormalizationMode,
    constant: T,
    rank: Option<u32>,
}

impl<T: Scalar> Normalization<T> {
    pub fn paper() -> Self {
        Self { mode: NormalizationMode::Paper, constant: T::one(), rank: None }
    }

    pub fn calibrated(calibration: &Calibration<T>) -> Result<Self> {
        if !(calibration.constant > T::zero() && calibration.constant.is_finite()) {
            return Err(Error::Parameter(format!(
                "calibration constant must be positive, got {}",
                to_f64(calibration.constant)
            )));
        }
        Ok(Self { mode: NormalizationMode::Calibrated, constant: calibration.constant, rank: Some(calibration.rank) })
    }

    pub fn mode(&self) -> NormalizationMode {
        self.mode
    }

    /// The calibration constant; one in paper mode.
    pub fn constant(&self) -> T {
        self.constant
    }

    /// Multiplier for a rank-`rank` evaluator, rejecting a calibration fitted
    /// for the other rank.
    pub fn scale_for_rank(&self, rank: u32) -> Result<T> {
        match self.rank {
            Some(r) if r != rank => {
                Err(Error::Parameter(format!("normalization calibrated for rank {r} used at rank {rank}")))
            }
            _ => Ok(self.constant),
        }
    }
}

impl<T: Scalar> Default for Normalization<T> {
    fn default() -> Self {
        Self::paper()
    }
}
