use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn xi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xi")).args(args).env_remove("XI_OUTPUT_DIR").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn in_process(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = xi_cli::run(std::iter::once("xi").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn eval_table_layout() {
    let out = xi(&["eval", "--rank", "1", "--k", "0", "--x", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "order,x,value,abs_error,terms,converged\n0,0.0,0.5,0.0,1,true\n");
}

#[test]
fn eval_rank2_at_origin_is_a_quarter_pi_squared() {
    let (code, out, _) = in_process(&["eval", "--rank", "2", "--k", "0,0", "--x", "0", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["order"], "0,0");
    assert!((v[0]["value"].as_f64().unwrap() - std::f64::consts::PI.powi(2) / 4.0).abs() < 1e-15);
}

#[test]
fn calibrated_eval_matches_quadrature_oracle() {
    let (_, series, _) = in_process(&["eval", "--rank", "1", "--k", "2", "--x", "0.4", "--norm", "calibrated", "--format", "json"]);
    let (_, oracle, _) = in_process(&["oracle", "xi", "--rank", "1", "--k", "2", "--x", "0.4", "--format", "json"]);
    let s: Value = serde_json::from_str(&series).unwrap();
    let o: Value = serde_json::from_str(&oracle).unwrap();
    let (s, o) = (s[0]["value"].as_f64().unwrap(), o[0]["value"].as_f64().unwrap());
    assert!((s - o).abs() < 1e-12 * o, "{s} vs {o}");
}

#[test]
fn oracle_examples() {
    let (_, out, _) = in_process(&["oracle", "xi", "--rank", "1", "--k", "0", "--x", "0", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!((v[0]["value"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-14);

    let (_, out, _) = in_process(&["oracle", "a", "--l", "2", "--k1", "1", "--k2", "1", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!((v[0]["value"].as_f64().unwrap() - std::f64::consts::PI.powi(2) / 2.0).abs() < 1e-12);
    assert_eq!(v[0]["exact_over_pi2"], "1/2");

    let (_, out, _) = in_process(&["oracle", "psi", "--k", "1", "--zeta", "0.5", "--x", "0", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v[0]["value"].as_f64().unwrap().abs() < 1e-13);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["eval", "--rank", "1", "--k", "0", "--x", "1.0"],
        vec!["eval", "--rank", "1", "--k", "0", "--grid", "0:0.5:0"],
        vec!["eval", "--rank", "1", "--k", "0", "--x", "0.5", "--tol", "1e-16"],
        vec!["eval", "--rank", "1", "--k", "0,1", "--x", "0.5"],
        vec!["eval", "--rank", "3", "--k", "0", "--x", "0.5"],
        vec!["verify", "no-such-suite"],
        vec!["frobnicate"],
    ] {
        let out = xi(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn verify_report_schema() {
    let out = xi(&["verify", "s-recurrence"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["schema_version", "tool_version", "suite", "tolerance", "cases", "max_residual", "pass"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["suite"], "s-recurrence");
    assert_eq!(v["tool_version"], xi_cli::TOOL_VERSION);
    assert_eq!(v["pass"], true);
}

#[test]
fn lemma_suite_reports_zero_mismatches() {
    let (code, out, _) = in_process(&["verify", "lemma1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["summary"]["exact_mismatches"], 0);
    assert!(v["summary"]["max_quadrature_gap"].as_f64().unwrap() < 1e-9);
}

#[test]
fn injected_unbalanced_case_fails_with_parameters() {
    let out = xi(&["verify", "whipple", "--inject-unbalanced"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], false);
    let failed: Vec<&Value> = v["cases"].as_array().unwrap().iter().filter(|c| c["pass"] == false).collect();
    assert_eq!(failed.len(), 1);
    let detail = failed[0]["detail"].as_str().unwrap();
    assert!(detail.contains("n=5") && detail.contains("C=9.501"), "{detail}");
}

#[test]
fn calibration_suite_for_rank_two() {
    let (code, out, _) = in_process(&["verify", "calibration", "--rank", "2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!((v["summary"]["rank2_constant"].as_f64().unwrap() - 1.0).abs() < 1e-8);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-6);
}

#[test]
fn seeds_change_the_draws() {
    let a = in_process(&["verify", "contiguous", "--draws", "5", "--seed", "1"]).1;
    let b = in_process(&["verify", "contiguous", "--draws", "5", "--seed", "2"]).1;
    let c = in_process(&["verify", "contiguous", "--draws", "5", "--seed", "1"]).1;
    assert_ne!(a, b);
    assert_eq!(a, c);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], 1);
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_xi"))
        .args(["eval", "--rank", "1", "--k", "1", "--x", "0.5", "--output", "sub/table.csv"])
        .env("XI_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("sub/table.csv")).unwrap();
    assert!(text.starts_with("order,x,value"));
}

fn write_field(dir: &Path, body: &str) -> String {
    let p = dir.join("field.csv");
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn kernel_export_from_sampled_field() {
    let dir = tempfile::tempdir().unwrap();
    let field = write_field(dir.path(), "# radius, field\nr,phi\n0,1\n0.5,2\n1,1.5\n");
    let (code, out, err) = in_process(&["kernel", "--rank", "1", "--k", "1", "--nodes", "8", "--field-csv", &field]);
    assert_eq!(code, 0, "{err}");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 9);
    assert!(lines[0].starts_with("r,weight,phi,m0,"));
    assert_eq!(lines[1].split(',').count(), 11);
}

#[test]
fn bad_fields_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let negative = write_field(dir.path(), "0,1\n0.5,-1\n1,1\n");
    let (code, _, err) = in_process(&["kernel", "--rank", "1", "--nodes", "8", "--field-csv", &negative]);
    assert_eq!(code, 2);
    assert!(err.contains("positive"), "{err}");
    let (code, _, _) = in_process(&["kernel", "--rank", "1", "--nodes", "8", "--field-csv", "/nonexistent/field.csv"]);
    assert_eq!(code, 2);
    let short = write_field(dir.path(), "0,1\n0.5,1\n");
    let (code, _, _) = in_process(&["spectrum", "--rank", "1", "--k", "0", "--nodes", "8", "--field-csv", &short]);
    assert_eq!(code, 2);
}

#[test]
fn spectrum_records_and_refinement() {
    let (code, out, err) = in_process(&["spectrum", "--rank", "1", "--k", "0", "--nodes", "64,128"]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0]["n_nodes"], 64);
    assert_eq!(records[0]["k"], "0");
    let eig: Vec<f64> = records[0]["eigenvalues"].as_array().unwrap().iter().map(|e| e.as_f64().unwrap()).collect();
    assert_eq!(eig.len(), 64);
    // φ ≡ 1 and k = 0 leave the constant vector in the kernel.
    let tol = records[0]["mesh_tolerance"].as_f64().unwrap();
    let scale = eig.iter().fold(0.0f64, |m, e| m.max(e.abs()));
    assert!(eig.iter().any(|e| e.abs() < tol * scale));
    assert!(records[0]["symmetry_residual"].as_f64().unwrap() < 1e-10);
    let drift = v["refinements"][0]["drift"].as_f64().unwrap();
    assert!(drift < 1e-2);
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = in_process(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.contains(xi_cli::TOOL_VERSION));
    assert_eq!(in_process(&["verify", "--help"]).0, 0);
}
