use std::io::Write;

use xi_core::oracle::{a_direct, a_expansion, psi_cyl, xi_direct, z_direct, CylindricalParams};
use xi_core::xi1::{default_calibration, xi1_series, Normalization};
use xi_core::xi2::xi2_series;
use xi_core::{EvalResult, QuadratureSpec, XiOrder};

use crate::args::{EvalArgs, GridArgs, NormArg, OracleCommand, OutputArgs, QuadratureArgs};
use crate::error::{usage, CliResult, EXIT_NONCONVERGENCE, EXIT_OK};
use crate::table::{emit, Cell, Table};

const GRID_MAX: f64 = 0.999;
const TOL_RANGE: (f64, f64) = (1e-14, 1e-2);

pub fn parse_orders(rank: u32, raw: &[String]) -> CliResult<Vec<XiOrder>> {
    raw.iter()
        .map(|s| {
            let order: XiOrder = s.parse().map_err(|_| usage(format!("invalid order '{s}'")))?;
            if order.rank() != rank {
                return Err(usage(format!("order '{s}' does not have rank {rank}")));
            }
            Ok(order)
        })
        .collect()
}

pub fn check_tolerance(tol: f64) -> CliResult<()> {
    if tol >= TOL_RANGE.0 && tol <= TOL_RANGE.1 {
        Ok(())
    } else {
        Err(usage(format!("tolerance must lie in [{:e}, {:e}], got {tol:e}", TOL_RANGE.0, TOL_RANGE.1)))
    }
}

/// Grid points, rounded to 12 decimals so `0.1 + 2 * 0.1` prints as `0.3`.
fn uniform_grid(spec: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<f64> = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|_| usage(format!("invalid grid '{spec}', expected START:STOP:STEP"))))
        .collect::<CliResult<_>>()?;
    let [start, stop, step] = parts[..] else {
        return Err(usage(format!("invalid grid '{spec}', expected START:STOP:STEP")));
    };
    if !(step > 0.0) || !(stop >= start) {
        return Err(usage(format!("grid needs step > 0 and stop >= start, got '{spec}'")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(usage(format!("grid '{spec}' has too many points")));
    }
    Ok((0..count).map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12).collect())
}

pub fn grid_points(args: &GridArgs) -> CliResult<Vec<f64>> {
    let mut xs = args.x.clone();
    if let Some(g) = &args.grid {
        xs.extend(uniform_grid(g)?);
    }
    if xs.is_empty() {
        return Err(usage("no arguments given; use --x or --grid"));
    }
    if let Some(bad) = xs.iter().find(|&&x| !(0.0..=GRID_MAX).contains(&x)) {
        return Err(usage(format!("arguments must lie in [0, {GRID_MAX}], got {bad}")));
    }
    Ok(xs)
}

fn quadrature_spec(q: &QuadratureArgs) -> CliResult<QuadratureSpec<f64>> {
    check_tolerance(q.tol)?;
    QuadratureSpec::new(q.panel_order, 1, q.tol, q.max_depth).map_err(|e| usage(e.to_string()))
}

fn result_cells(r: &EvalResult<f64>) -> [Cell; 4] {
    [Cell::Float(r.value), Cell::Float(r.abs_error), Cell::Int(r.terms_used as i64), Cell::Bool(r.converged)]
}

const VALUE_COLUMNS: [&str; 4] = ["value", "abs_error", "terms", "converged"];

fn columns(leading: &[&'static str]) -> Vec<&'static str> {
    leading.iter().chain(VALUE_COLUMNS.iter()).copied().collect()
}

fn finish(table: &Table, output: &OutputArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    emit(&table.render(output.format)?, output.output.as_deref(), stdout)?;
    let converged = table.rows.iter().all(|row| !matches!(row.last(), Some(Cell::Bool(false))));
    Ok(if converged { EXIT_OK } else { EXIT_NONCONVERGENCE })
}

pub fn normalization(mode: NormArg, rank: u32) -> CliResult<Normalization<f64>> {
    Ok(match mode {
        NormArg::Paper => Normalization::paper(),
        NormArg::Calibrated => Normalization::calibrated(&default_calibration(rank)?)?,
    })
}

pub fn eval_series(order: XiOrder, x: f64, tol: f64, norm: &Normalization<f64>) -> xi_core::Result<EvalResult<f64>> {
    match order {
        XiOrder::Rank1(k) => xi1_series(k, x, tol, norm),
        XiOrder::Rank2(o) => Ok(xi2_series(o, x, tol)?.scaled(norm.scale_for_rank(2)?)),
    }
}

pub fn cmd_eval(args: &EvalArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let orders = parse_orders(args.rank, &args.orders)?;
    let xs = grid_points(&args.grid)?;
    check_tolerance(args.tol)?;
    let norm = normalization(args.norm, args.rank)?;
    let mut table = Table::new(&columns(&["order", "x"]));
    for &order in &orders {
        for &x in &xs {
            let r = eval_series(order, x, args.tol, &norm)?;
            let mut row = vec![Cell::Text(order.to_string()), Cell::Float(x)];
            row.extend(result_cells(&r));
            table.push(row);
        }
    }
    finish(&table, &args.output, stdout)
}

pub fn cmd_oracle(cmd: &OracleCommand, stdout: &mut dyn Write) -> CliResult<i32> {
    match cmd {
        OracleCommand::Xi { rank, orders, grid, quad, output } => {
            let orders = parse_orders(*rank, orders)?;
            let xs = grid_points(grid)?;
            let spec = quadrature_spec(quad)?;
            let mut table = Table::new(&columns(&["order", "x"]));
            for &order in &orders {
                for &x in &xs {
                    let r = xi_direct(order, x, &spec)?;
                    let mut row = vec![Cell::Text(order.to_string()), Cell::Float(x)];
                    row.extend(result_cells(&r));
                    table.push(row);
                }
            }
            finish(&table, output, stdout)
        }
        OracleCommand::Z { rank, orders, r, rho, quad, output } => {
            let orders = parse_orders(*rank, orders)?;
            let spec = quadrature_spec(quad)?;
            let mut table = Table::new(&columns(&["order", "r", "rho"]));
            for &order in &orders {
                for &a in r {
                    for &b in rho {
                        let res = z_direct(order, a, b, &spec)?;
                        let mut row = vec![Cell::Text(order.to_string()), Cell::Float(a), Cell::Float(b)];
                        row.extend(result_cells(&res));
                        table.push(row);
                    }
                }
            }
            finish(&table, output, stdout)
        }
        OracleCommand::A { l, k1, k2, quad, output } => {
            let spec = quadrature_spec(quad)?;
            let mut table = Table::new(&columns(&["l", "k1", "k2", "exact_over_pi2"]));
            for &l in l {
                let res = a_direct(l, *k1, *k2, &spec)?;
                let mut row = vec![
                    Cell::Int(l.into()),
                    Cell::Int((*k1).into()),
                    Cell::Int((*k2).into()),
                    Cell::Text(a_expansion(l, *k1, *k2).to_string()),
                ];
                row.extend(result_cells(&res));
                table.push(row);
            }
            finish(&table, output, stdout)
        }
        OracleCommand::Psi { k, zeta, x, quad, output } => {
            let spec = quadrature_spec(quad)?;
            let mut table = Table::new(&columns(&["k", "zeta", "x"]));
            for &k in k {
                for &x in x {
                    let p = CylindricalParams::new(k, *zeta, x)?;
                    let res = psi_cyl(&p, &spec)?;
                    let mut row = vec![Cell::Int(k.into()), Cell::Float(*zeta), Cell::Float(x)];
                    row.extend(result_cells(&res));
                    table.push(row);
                }
            }
            finish(&table, output, stdout)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(uniform_grid("0.1:0.3:0.1").unwrap(), vec![0.1, 0.2, 0.3]);
        assert_eq!(uniform_grid("0:0.999:0.333").unwrap(), vec![0.0, 0.333, 0.666, 0.999]);
        assert!(uniform_grid("0:1").is_err());
        assert!(uniform_grid("0.5:0.1:0.1").is_err());
        assert!(uniform_grid("0:1:0").is_err());
        let args = GridArgs { x: vec![0.5], grid: Some("0.9:1.0:0.1".into()) };
        assert!(grid_points(&args).is_err());
    }

    #[test]
    fn tolerance_range() {
        assert!(check_tolerance(1e-14).is_ok());
        assert!(check_tolerance(1e-2).is_ok());
        assert!(check_tolerance(1e-15).is_err());
        assert!(check_tolerance(0.1).is_err());
    }

    #[test]
    fn orders_must_match_rank() {
        assert_eq!(parse_orders(2, &["1,0".into()]).unwrap(), vec![XiOrder::rank2(0, 1)]);
        assert!(parse_orders(1, &["1,0".into()]).is_err());
        assert!(parse_orders(1, &["x".into()]).is_err());
    }
}
