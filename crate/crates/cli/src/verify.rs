use std::io::Write;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{Map, Value};
use xi_core::hypcore::{contiguous_3f2_residual, whipple_4f3_residual};
use xi_core::kernels::{assemble_operator, selfadjointness_check, spectral_drift, spectrum, KernelDomain, RadialField};
use xi_core::oracle::{a_direct, a_expansion, partial_wave_direct, QuadratureSpec};
use xi_core::xi1::{
    calibrate_normalization, default_samples, xi1_diffdiff_residual, xi1_ode_residual, Normalization,
    CALIBRATION_SPREAD_LIMIT,
};
use xi_core::xi2::{
    a_closed, lowest_mode_ode_residual, s_sum_closed, s_sum_direct, s_sum_recurrence_check, xi2_diffdiff_residual,
    xi2_ode_residual, Rank2Order,
};
use xi_core::{Residual, XiOrder};

use crate::args::{Suite, VerifyArgs};
use crate::error::{usage, CliResult, EXIT_NONCONVERGENCE, EXIT_OK, EXIT_VERIFY_FAILED};
use crate::operator::kernel_normalization;
use crate::table::{emit, json_bytes};
use crate::{SCHEMA_VERSION, TOOL_VERSION};

#[derive(Debug, Clone, Serialize)]
pub struct Case {
    pub label: String,
    /// `null` when the case could not be evaluated.
    pub residual: f64,
    pub tolerance: f64,
    pub converged: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Case {
    fn value(label: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self { label: label.into(), residual, tolerance, converged: true, pass: residual <= tolerance, detail: None }
    }

    fn failed(label: impl Into<String>, tolerance: f64, err: impl ToString) -> Self {
        Self {
            label: label.into(),
            residual: f64::NAN,
            tolerance,
            converged: true,
            pass: false,
            detail: Some(err.to_string()),
        }
    }

    fn residual(label: impl Into<String>, r: xi_core::Result<Residual<f64>>, tolerance: f64) -> Self {
        match r {
            Ok(r) => Self { converged: r.converged, pass: r.converged && r.value <= tolerance, ..Self::value(label, r.value, tolerance) },
            Err(e) => Self::failed(label, tolerance, e),
        }
    }

    /// Exact comparison: residual 0 on equality, 1 otherwise.
    fn exact(label: impl Into<String>, equal: bool) -> Self {
        Self::value(label, if equal { 0.0 } else { 1.0 }, 0.0)
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub summary: Map<String, Value>,
    pub cases: Vec<Case>,
    pub max_residual: f64,
    pub pass: bool,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.cases.iter().any(|c| !c.converged) {
            EXIT_NONCONVERGENCE
        } else if self.pass {
            EXIT_OK
        } else {
            EXIT_VERIFY_FAILED
        }
    }
}

struct Outcome {
    tolerance: f64,
    seed: Option<u64>,
    summary: Map<String, Value>,
    cases: Vec<Case>,
}

impl Outcome {
    fn new(tolerance: f64, cases: Vec<Case>) -> Self {
        Self { tolerance, seed: None, summary: Map::new(), cases }
    }
}

fn unit_grid() -> Vec<f64> {
    (1..=9).map(|i| i as f64 / 10.0).collect()
}

fn rank1_ode() -> Outcome {
    let norm = Normalization::paper();
    let cases = (0..=10u32)
        .flat_map(|k| unit_grid().into_iter().map(move |x| (k, x)))
        .map(|(k, x)| Case::residual(format!("k={k} x={x}"), xi1_ode_residual(k, x, &norm), 1e-8))
        .collect();
    Outcome::new(1e-8, cases)
}

fn rank1_ddr() -> Outcome {
    let norm = Normalization::paper();
    let cases = (0..=10u32)
        .flat_map(|k| unit_grid().into_iter().map(move |x| (k, x)))
        .map(|(k, x)| Case::residual(format!("k={k} x={x}"), xi1_diffdiff_residual(k, x, &norm), 1e-8))
        .collect();
    Outcome::new(1e-8, cases)
}

/// Diagonal and first off-diagonal orders with both indices at most 6.
fn near_diagonal_orders() -> Vec<Rank2Order> {
    (0..=6u32).map(|k| Rank2Order::new(k, k)).chain((0..6u32).map(|k| Rank2Order::new(k, k + 1))).collect()
}

fn rank2_ode() -> Outcome {
    let mut cases = Vec::new();
    for order in near_diagonal_orders() {
        for x in unit_grid() {
            cases.push(Case::residual(
                format!("k=({},{}) x={x}", order.k1(), order.k2()),
                xi2_ode_residual(order, x),
                1e-7,
            ));
        }
    }
    for x in unit_grid() {
        cases.push(Case::residual(format!("lowest mode x={x}"), lowest_mode_ode_residual(x), 1e-7));
    }
    Outcome::new(1e-7, cases)
}

fn rank2_ddr() -> Outcome {
    let cases = (0..=5u32)
        .flat_map(|k| unit_grid().into_iter().map(move |x| (k, x)))
        .map(|(k, x)| Case::residual(format!("k={k} x={x}"), xi2_diffdiff_residual(k, x), 1e-8))
        .collect();
    Outcome::new(1e-8, cases)
}

fn lemma1() -> Outcome {
    const QUADRATURE_TOL: f64 = 1e-9;
    let mut cases = Vec::new();
    let mut mismatches = 0u64;
    for l in 0..=14u32 {
        for k1 in 0..=l {
            for k2 in 0..=(l - k1) {
                let equal = a_closed(l, k1, k2).coefficient == a_expansion(l, k1, k2);
                mismatches += u64::from(!equal);
                cases.push(Case::exact(format!("exact l={l} k=({k1},{k2})"), equal));
            }
        }
    }
    let spec = QuadratureSpec::<f64>::default().with_tol(1e-13).expect("valid tolerance");
    let mut gap = 0.0f64;
    for l in 0..=10u32 {
        for k1 in 0..=5u32 {
            for k2 in 0..=5u32 {
                let label = format!("quadrature l={l} k=({k1},{k2})");
                match a_direct(l, k1, k2, &spec) {
                    Ok(q) => {
                        let d = (a_closed(l, k1, k2).value::<f64>() - q.value).abs();
                        gap = gap.max(d);
                        cases.push(Case { converged: q.converged, ..Case::value(label, d, QUADRATURE_TOL) });
                    }
                    Err(e) => cases.push(Case::failed(label, QUADRATURE_TOL, e)),
                }
            }
        }
    }
    let mut out = Outcome::new(QUADRATURE_TOL, cases);
    out.summary.insert("exact_mismatches".into(), mismatches.into());
    out.summary.insert("max_quadrature_gap".into(), gap.into());
    out
}

fn s_recurrence() -> Outcome {
    let mut cases = Vec::new();
    for k1 in 0..=6u32 {
        for k2 in 0..=6u32 {
            for n in 0..=8u32 {
                cases.push(Case::exact(
                    format!("closed form k=({k1},{k2}) N={n}"),
                    s_sum_closed(k1, k2, n) == s_sum_direct(k1, k2, n),
                ));
            }
            for n in 0..=10u32 {
                cases.push(Case::exact(format!("recurrence k=({k1},{k2}) N={n}"), s_sum_recurrence_check(k1, k2, n)));
            }
        }
    }
    Outcome::new(0.0, cases)
}

fn contiguous(seed: u64, draws: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(draws);
    for i in 0..draws {
        let a: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.3..4.0));
        let b: [f64; 2] = std::array::from_fn(|_| rng.gen_range(0.3..4.0));
        let y: f64 = -rng.gen_range(1e-12..0.9);
        let label = format!("draw {i}: a={a:?} b={b:?} y={y}");
        cases.push(Case::residual(label, contiguous_3f2_residual(a, b, y, 1e-15), 1e-10));
    }
    let mut out = Outcome::new(1e-10, cases);
    out.seed = Some(seed);
    out
}

/// Parameters `(K+1)/2, (K+2)/2, n+K+1/2; k₁+1, k₂+1, K+1` with `K = k₁+k₂`.
fn whipple_pattern(k1: u32, k2: u32, n: u32) -> [f64; 6] {
    let (a, b) = (k1 as f64, k2 as f64);
    let kk = a + b;
    [(kk + 1.0) / 2.0, (kk + 2.0) / 2.0, n as f64 + kk + 0.5, a + 1.0, b + 1.0, kk + 1.0]
}

fn whipple(inject_unbalanced: bool) -> Outcome {
    let mut cases = Vec::new();
    for n in 0..=12u32 {
        for k1 in 0..=6u32 {
            for k2 in k1..=6u32 {
                let p = whipple_pattern(k1, k2, n);
                cases.push(Case::residual(format!("n={n} k=({k1},{k2})"), whipple_4f3_residual(n, p), 1e-12));
            }
        }
    }
    if inject_unbalanced {
        let mut p = whipple_pattern(1, 3, 5);
        p[2] += 1e-3;
        cases.push(Case::residual("injected unbalanced n=5 k=(1,3)", whipple_4f3_residual(5, p), 1e-12));
    }
    Outcome::new(1e-12, cases)
}

fn calibration(rank: Option<u32>) -> Outcome {
    const STABILITY: f64 = 1e-8;
    let ranks = rank.map_or(vec![1, 2], |r| vec![r]);
    let mut cases = Vec::new();
    let mut summary = Map::new();
    for rank in ranks {
        let mut constants = Vec::new();
        for set in 0..2 {
            let label = format!("rank {rank} sample set {set} spread");
            let samples = default_samples(rank, set).expect("built-in sample sets");
            match calibrate_normalization::<f64>(rank, &samples.xs, &samples.orders) {
                Ok(c) => {
                    summary.insert(format!("rank{rank}_set{set}_constant"), c.constant.into());
                    summary.insert(format!("rank{rank}_set{set}_spread"), c.spread.into());
                    constants.push(c.constant);
                    cases.push(Case::value(label, c.spread, CALIBRATION_SPREAD_LIMIT));
                }
                Err(e) => cases.push(Case::failed(label, CALIBRATION_SPREAD_LIMIT, e)),
            }
        }
        if let [c0, c1] = constants[..] {
            summary.insert(format!("rank{rank}_constant"), c0.into());
            cases.push(Case::value(format!("rank {rank} constant stability"), (c0 - c1).abs(), STABILITY));
        } else {
            cases.push(Case::failed(format!("rank {rank} constant stability"), STABILITY, "a sample set failed"));
        }
    }
    let mut out = Outcome::new(CALIBRATION_SPREAD_LIMIT, cases);
    out.summary = summary;
    out
}

struct KernelSetup {
    inner: f64,
    coarse: usize,
    /// Order used for the asymmetric-field, drift and partial-wave checks.
    order: XiOrder,
    /// Tolerance of the direct multidimensional reference integrals.
    direct_tol: f64,
}

fn kernel_consistency(rank: u32, seed: u64, nodes: Option<usize>) -> CliResult<Outcome> {
    let setup = match rank {
        1 => KernelSetup { inner: 0.0, coarse: 200, order: XiOrder::rank1(1), direct_tol: 1e-8 },
        _ => KernelSetup { inner: 0.3, coarse: 200, order: XiOrder::rank2(0, 1), direct_tol: 1e-6 },
    };
    let coarse = nodes.unwrap_or(setup.coarse);
    if coarse < 8 {
        return Err(usage(format!("kernel-consistency needs at least 8 nodes, got {coarse}")));
    }
    let norm = kernel_normalization(rank)?;
    let domain = KernelDomain::new(rank, setup.inner, 1.0)?;
    let zero = XiOrder::from_orders(&vec![0; rank as usize])?;
    let one = RadialField::constant(1.0);
    let mut cases = Vec::new();
    let mut summary = Map::new();

    let m = assemble_operator(&domain, zero, &one, coarse, &norm)?;
    cases.push(Case::value(format!("symmetry phi=1 k={zero} n={coarse}"), selfadjointness_check(&m), 1e-10));
    cases.push(Case::value(
        format!("constant vector phi=1 k={zero} n={coarse}"),
        m.constant_vector_residual(),
        m.tolerance(),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let radii: Vec<f64> = (0..=20).map(|i| setup.inner + (1.0 - setup.inner) * i as f64 / 20.0).collect();
    let values: Vec<f64> = radii.iter().map(|_| rng.gen_range(0.5..2.0)).collect();
    let random = RadialField::sampled(radii, values)?;
    let m = assemble_operator(&domain, setup.order, &random, coarse, &norm)?;
    cases.push(Case::value(format!("symmetry random phi k={} n={coarse}", setup.order), selfadjointness_check(&m), 1e-8));

    let fine = 2 * coarse;
    let a = spectrum(&assemble_operator(&domain, setup.order, &one, coarse, &norm)?)?;
    let b = spectrum(&assemble_operator(&domain, setup.order, &one, fine, &norm)?)?;
    let drift = spectral_drift(&a, &b, 5);
    summary.insert("largest_eigenvalue".into(), b[b.len() - 1].into());
    cases.push(Case::value(format!("eigenvalue drift k={} n={coarse}->{fine}", setup.order), drift, 1e-2));

    let phi = |r: f64| 1.0 + r * r;
    let mode = |r: f64| r * (1.0 - 0.5 * r * r);
    let m = assemble_operator(&domain, setup.order, &RadialField::function(phi), coarse, &norm)?;
    let u: Vec<f64> = m.nodes().iter().map(|&r| mode(r)).collect();
    let mu = m.apply(&u)?;
    let scale = mu.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let spec = QuadratureSpec::new(12, 1, setup.direct_tol, 30)?;
    let probes = if rank == 1 { vec![coarse / 4, coarse / 2, 3 * coarse / 4] } else { vec![coarse / 2] };
    for i in probes {
        let r = m.nodes()[i];
        let label = format!("partial wave k={} r={r}", setup.order);
        match partial_wave_direct(setup.order, setup.inner, 1.0, r, &phi, &mode, &spec) {
            Ok(d) => cases.push(Case { converged: d.converged, ..Case::value(label, (mu[i] - d.value).abs() / scale, 1e-3) }),
            Err(e) => cases.push(Case::failed(label, 1e-3, e)),
        }
    }
    let mut out = Outcome::new(1e-8, cases);
    out.seed = Some(seed);
    out.summary = summary;
    Ok(out)
}

pub fn suite_name(suite: Suite) -> String {
    suite.to_possible_value().expect("no skipped variants").get_name().to_string()
}

pub fn run_suite(args: &VerifyArgs) -> CliResult<Report> {
    let outcome = match args.suite {
        Suite::Rank1Ode => rank1_ode(),
        Suite::Rank1Ddr => rank1_ddr(),
        Suite::Rank2Ode => rank2_ode(),
        Suite::Rank2Ddr => rank2_ddr(),
        Suite::Lemma1 => lemma1(),
        Suite::SRecurrence => s_recurrence(),
        Suite::Contiguous => contiguous(args.seed, args.draws),
        Suite::Whipple => whipple(args.inject_unbalanced),
        Suite::Calibration => calibration(args.rank),
        Suite::KernelConsistency => kernel_consistency(args.rank.unwrap_or(1), args.seed, args.nodes)?,
    };
    let max_residual = outcome.cases.iter().map(|c| c.residual).filter(|r| r.is_finite()).fold(0.0, f64::max);
    let pass = outcome.cases.iter().all(|c| c.pass);
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        suite: suite_name(args.suite),
        seed: outcome.seed,
        tolerance: outcome.tolerance,
        summary: outcome.summary,
        cases: outcome.cases,
        max_residual,
        pass,
    })
}

pub fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let report = run_suite(args)?;
    emit(&json_bytes(&report)?, args.output.as_deref(), stdout)?;
    Ok(report.exit_code())
}
