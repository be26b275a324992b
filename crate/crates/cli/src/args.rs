use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::TOOL_VERSION;

/// Seed used by the random-draw verification suites when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "xi", version = TOOL_VERSION, about = "Evaluate, cross-check and discretize rank-1 and rank-2 Xi-functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate Xi-functions from their hypergeometric series.
    Eval(EvalArgs),
    /// Evaluate the defining integrals by direct quadrature.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run an identity verification sweep and print a JSON report.
    Verify(VerifyArgs),
    /// Assemble a discretized partial relaxation operator and export the matrix.
    Kernel(KernelArgs),
    /// Eigenvalues of discretized partial relaxation operators.
    Spectrum(SpectrumArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Paper,
    Calibrated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Embedded,
    Verbatim,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; relative paths resolve against $XI_OUTPUT_DIR when set. Defaults to stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Arguments, comma separated or repeated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub x: Vec<f64>,
    /// Uniform grid START:STOP:STEP (inclusive of STOP).
    #[arg(long)]
    pub grid: Option<String>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
    pub rank: u32,
    /// Order: `k` for rank 1, `k1,k2` for rank 2. Repeat for several orders.
    #[arg(long = "k", required = true)]
    pub orders: Vec<String>,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Series tolerance, between 1e-14 and 1e-2.
    #[arg(long, default_value_t = 1e-14)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = NormArg::Paper)]
    pub norm: NormArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct QuadratureArgs {
    /// Quadrature tolerance relative to max(1, |integral|), between 1e-14 and 1e-2.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Gauss-Legendre nodes per panel.
    #[arg(long, default_value_t = 16)]
    pub panel_order: usize,
    /// Maximum bisection depth.
    #[arg(long, default_value_t = 30)]
    pub max_depth: u32,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// The defining angular integral of the Xi-function.
    Xi {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
        rank: u32,
        #[arg(long = "k", required = true)]
        orders: Vec<String>,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        quad: QuadratureArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The kernel Z(r, rho) over all pairs of the given radii.
    Z {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
        rank: u32,
        #[arg(long = "k", required = true)]
        orders: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        rho: Vec<f64>,
        #[command(flatten)]
        quad: QuadratureArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The angular moment of (cos t1 + cos t2)^l cos(k1 t1) cos(k2 t2) over [0, pi]^2.
    A {
        #[arg(long, value_delimiter = ',', required = true)]
        l: Vec<u32>,
        #[arg(long, default_value_t = 0)]
        k1: u32,
        #[arg(long, default_value_t = 0)]
        k2: u32,
        #[command(flatten)]
        quad: QuadratureArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The cylindrical-domain function over [0, 2 pi].
    Psi {
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u32>,
        #[arg(long, default_value_t = 0.0)]
        zeta: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<f64>,
        #[command(flatten)]
        quad: QuadratureArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Rank1Ode,
    Rank1Ddr,
    Rank2Ode,
    Rank2Ddr,
    Lemma1,
    SRecurrence,
    Contiguous,
    Whipple,
    Calibration,
    KernelConsistency,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Rank for the calibration and kernel-consistency suites (calibration runs both when omitted).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
    pub rank: Option<u32>,
    /// Seed of the random draws.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Number of random parameter draws for the contiguous suite.
    #[arg(long, default_value_t = 100)]
    pub draws: usize,
    /// Add an unbalanced case to the whipple suite; the suite must then fail.
    #[arg(long)]
    pub inject_unbalanced: bool,
    /// Coarse mesh size for kernel-consistency; the refinement uses twice as many.
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Report file; relative paths resolve against $XI_OUTPUT_DIR when set. Defaults to stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OperatorArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
    pub rank: u32,
    /// Lower radius.
    #[arg(long, default_value_t = 0.0)]
    pub inner: f64,
    /// Upper radius.
    #[arg(long, default_value_t = 1.0)]
    pub outer: f64,
    /// Constant field value.
    #[arg(long, conflicts_with = "field_csv")]
    pub field: Option<f64>,
    /// Two-column CSV (r, phi) sampled field, interpolated linearly.
    #[arg(long)]
    pub field_csv: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ConventionArg::Embedded)]
    pub convention: ConventionArg,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[command(flatten)]
    pub operator: OperatorArgs,
    /// Order: `k` for rank 1, `k1,k2` for rank 2.
    #[arg(long = "k", default_value = "0")]
    pub order: String,
    #[arg(long, default_value_t = 64)]
    pub nodes: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub operator: OperatorArgs,
    /// Orders; repeat for several.
    #[arg(long = "k", required = true)]
    pub orders: Vec<String>,
    /// Mesh sizes, comma separated; consecutive sizes form refinement pairs.
    #[arg(long, value_delimiter = ',', default_value = "64")]
    pub nodes: Vec<usize>,
    /// Number of largest eigenvalues compared between refinements.
    #[arg(long, default_value_t = 5)]
    pub drift_count: usize,
    /// Output file; relative paths resolve against $XI_OUTPUT_DIR when set. Defaults to stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}
