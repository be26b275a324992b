use std::io::Write;
use std::path::Path;

use serde::Serialize;
use xi_core::kernels::{
    assemble_operator, selfadjointness_check, spectral_drift, spectrum, Convention, KernelDomain, KernelMatrix,
    RadialField,
};
use xi_core::xi1::{default_calibration, Normalization};
use xi_core::XiOrder;

use crate::args::{ConventionArg, Format, KernelArgs, OperatorArgs, SpectrumArgs};
use crate::error::{usage, CliResult, EXIT_OK};
use crate::eval::parse_orders;
use crate::table::{emit, format_float, json_bytes};
use crate::{SCHEMA_VERSION, TOOL_VERSION};

/// Reads a two-column `r, phi` CSV. A first row that does not parse as numbers
/// is taken as a header; lines starting with `#` are skipped.
pub fn read_field_csv(path: &Path) -> CliResult<RadialField<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)?;
    let (mut radii, mut values) = (Vec::new(), Vec::new());
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() != 2 {
            return Err(usage(format!("{}: row {} must have two columns", path.display(), line + 1)));
        }
        match (record[0].parse::<f64>(), record[1].parse::<f64>()) {
            (Ok(r), Ok(v)) => {
                radii.push(r);
                values.push(v);
            }
            _ if line == 0 => continue,
            _ => return Err(usage(format!("{}: row {} is not numeric", path.display(), line + 1))),
        }
    }
    Ok(RadialField::sampled(radii, values)?)
}

fn field(args: &OperatorArgs) -> CliResult<RadialField<f64>> {
    match (&args.field_csv, args.field) {
        (Some(path), _) => read_field_csv(path),
        (None, Some(v)) => Ok(RadialField::constant(v)),
        (None, None) => Ok(RadialField::constant(1.0)),
    }
}

fn domain(args: &OperatorArgs) -> CliResult<KernelDomain<f64>> {
    let convention = match args.convention {
        ConventionArg::Embedded => Convention::Embedded,
        ConventionArg::Verbatim => Convention::Verbatim,
    };
    Ok(KernelDomain::new(args.rank, args.inner, args.outer)?.with_convention(convention))
}

/// Kernels are built from the calibrated series so they equal the defining integrals.
pub fn kernel_normalization(rank: u32) -> CliResult<Normalization<f64>> {
    Ok(Normalization::calibrated(&default_calibration(rank)?)?)
}

fn single_order(rank: u32, raw: &str) -> CliResult<XiOrder> {
    Ok(parse_orders(rank, &[raw.to_string()])?[0])
}

#[derive(Serialize)]
struct MatrixExport<'a> {
    schema_version: u32,
    tool_version: &'a str,
    rank: u32,
    order: String,
    convention: String,
    nodes: &'a [f64],
    weights: &'a [f64],
    field: &'a [f64],
    entries: Vec<Vec<f64>>,
}

fn matrix_csv(m: &KernelMatrix<f64>) -> CliResult<Vec<u8>> {
    let n = m.len();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["r".to_string(), "weight".to_string(), "phi".to_string()];
    header.extend((0..n).map(|j| format!("m{j}")));
    w.write_record(&header)?;
    for i in 0..n {
        let mut row = vec![format_float(m.nodes()[i]), format_float(m.weights()[i]), format_float(m.field()[i])];
        row.extend((0..n).map(|j| format_float(m.entries()[(i, j)])));
        w.write_record(&row)?;
    }
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

pub fn cmd_kernel(args: &KernelArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let rank = args.operator.rank;
    let order = single_order(rank, &args.order)?;
    let domain = domain(&args.operator)?;
    let m = assemble_operator(&domain, order, &field(&args.operator)?, args.nodes, &kernel_normalization(rank)?)?;
    let bytes = match args.output.format {
        Format::Csv => matrix_csv(&m)?,
        Format::Json => json_bytes(&MatrixExport {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION,
            rank,
            order: order.to_string(),
            convention: domain.convention().to_string(),
            nodes: m.nodes(),
            weights: m.weights(),
            field: m.field(),
            entries: (0..m.len()).map(|i| m.entries().row(i).iter().copied().collect()).collect(),
        })?,
    };
    emit(&bytes, args.output.output.as_deref(), stdout)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SpectrumRecord {
    n_nodes: usize,
    k: String,
    eigenvalues: Vec<f64>,
    symmetry_residual: f64,
    constant_vector_residual: f64,
    mesh_tolerance: f64,
}

#[derive(Serialize)]
struct Refinement {
    k: String,
    coarse: usize,
    fine: usize,
    compared: usize,
    drift: f64,
}

#[derive(Serialize)]
struct SpectrumReport<'a> {
    schema_version: u32,
    tool_version: &'a str,
    rank: u32,
    inner: f64,
    outer: f64,
    convention: String,
    records: Vec<SpectrumRecord>,
    refinements: Vec<Refinement>,
}

pub fn cmd_spectrum(args: &SpectrumArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let rank = args.operator.rank;
    let orders = parse_orders(rank, &args.orders)?;
    if args.nodes.is_empty() {
        return Err(usage("need at least one mesh size"));
    }
    let domain = domain(&args.operator)?;
    let field = field(&args.operator)?;
    let norm = kernel_normalization(rank)?;
    let mut records = Vec::new();
    let mut refinements = Vec::new();
    for &order in &orders {
        let mut previous: Option<(usize, Vec<f64>)> = None;
        for &n in &args.nodes {
            let m = assemble_operator(&domain, order, &field, n, &norm)?;
            let eigenvalues = spectrum(&m)?;
            if let Some((coarse, prev)) = &previous {
                refinements.push(Refinement {
                    k: order.to_string(),
                    coarse: *coarse,
                    fine: n,
                    compared: args.drift_count,
                    drift: spectral_drift(prev, &eigenvalues, args.drift_count),
                });
            }
            records.push(SpectrumRecord {
                n_nodes: n,
                k: order.to_string(),
                eigenvalues: eigenvalues.clone(),
                symmetry_residual: selfadjointness_check(&m),
                constant_vector_residual: m.constant_vector_residual(),
                mesh_tolerance: m.tolerance(),
            });
            previous = Some((n, eigenvalues));
        }
    }
    let report = SpectrumReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        rank,
        inner: domain.inner(),
        outer: domain.outer(),
        convention: domain.convention().to_string(),
        records,
        refinements,
    };
    emit(&json_bytes(&report)?, args.output.as_deref(), stdout)?;
    Ok(EXIT_OK)
}
