use std::process::{Command, Output};

use serde_json::Value;

fn mlfrac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlfrac"))
        .args(args)
        .env_remove("MLFRAC_DEFAULT_TOL")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_column(text: &str, name: &str) -> Vec<String> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines
        .map(|l| l.split(',').nth(idx).unwrap().to_owned())
        .collect()
}

#[test]
fn ml_at_alpha_one_is_exp() {
    let o = mlfrac(&["ml", "--alpha", "1.0", "--r", "1.0"]);
    assert!(o.status.success());
    let v: f64 = csv_column(&stdout(&o), "value")[0].parse().unwrap();
    assert!((v - std::f64::consts::E).abs() < 1e-15);
}

#[test]
fn ml_grid_is_positive() {
    let o = mlfrac(&[
        "ml",
        "--alpha",
        "0.5",
        "--r-min",
        "-10",
        "--r-max",
        "10",
        "--r-steps",
        "21",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let values = csv_column(&stdout(&o), "value");
    assert_eq!(values.len(), 21);
    assert!(values.iter().all(|v| v.parse::<f64>().unwrap() > 0.0));
}

#[test]
fn ml_half_order_matches_erf_value() {
    let o = mlfrac(&["ml", "--alpha", "0.5", "--r", "1.0"]);
    let v: f64 = csv_column(&stdout(&o), "value")[0].parse().unwrap();
    assert!((v - 5.008_980_080_762_283).abs() < 1e-13);
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(mlfrac(&["ml", "--alpha", "0.5"]).status.code(), Some(2));
    assert_eq!(
        mlfrac(&["ml", "--alpha", "x", "--r", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(mlfrac(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    let o = mlfrac(&["ml", "--alpha", "1.5", "--r", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = mlfrac(&["solution", "--alpha", "0.75", "--x", "1", "--t", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        String::from_utf8_lossy(&o.stderr).contains("initial datum is a Dirac delta; choose t > 0")
    );
}

#[test]
fn gaussian_solution_value() {
    let o = mlfrac(&[
        "solution", "--alpha", "1", "--a", "1", "--d", "1", "--x", "1", "--t", "1",
    ]);
    let u: f64 = csv_column(&stdout(&o), "u")[0].parse().unwrap();
    let exact = 0.75f64.exp() / (4.0 * std::f64::consts::PI).sqrt();
    assert!((u - exact).abs() < 1e-14);
}

#[test]
fn series_and_quadrature_agree_within_printed_bounds() {
    let get = |method: &str| {
        let o = mlfrac(&[
            "solution", "--alpha", "0.75", "--x", "5", "--t", "2", "--method", method,
        ]);
        let text = stdout(&o);
        let u: f64 = csv_column(&text, "u")[0].parse().unwrap();
        let b: f64 = csv_column(&text, "abs_error_bound")[0].parse().unwrap();
        (u, b)
    };
    let (us, bs) = get("series");
    let (uq, bq) = get("quadrature");
    assert!((us - uq).abs() <= bs + bq);
}

#[test]
fn origin_is_delegated_to_quadrature() {
    let o = mlfrac(&[
        "solution", "--alpha", "0.5", "--x", "0", "--t", "1", "--method", "series",
    ]);
    assert_eq!(csv_column(&stdout(&o), "method")[0], "DirectQuadrature");
}

#[test]
fn tolerance_comes_from_environment() {
    let args = [
        "solution", "--alpha", "0.75", "--x", "5", "--t", "2", "--format", "json",
    ];
    let o = Command::new(env!("CARGO_BIN_EXE_mlfrac"))
        .args(args)
        .env("MLFRAC_DEFAULT_TOL", "1e-6")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["inputs"]["tol"], 1e-6);
    let loose = v["rows"][0]["abs_error_bound"].as_f64().unwrap();
    let strict: Value = serde_json::from_slice(&mlfrac(&args).stdout).unwrap();
    assert!(loose > strict["rows"][0]["abs_error_bound"].as_f64().unwrap());
}

#[test]
fn grid_rows_follow_input_order() {
    let o = mlfrac(&["solution", "--alpha", "0.75", "--x", "3,-1", "--t", "2,0.5"]);
    let text = stdout(&o);
    let xs = csv_column(&text, "x");
    let ts = csv_column(&text, "t");
    assert_eq!(xs, ["3.0", "3.0", "-1.0", "-1.0"]);
    assert_eq!(ts, ["2.0", "0.5", "2.0", "0.5"]);
}

#[test]
fn verify_ml_suite_passes() {
    let o = mlfrac(&["verify", "--suite", "ml"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(csv_column(&text, "status").iter().all(|s| s == "pass"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("0 failed"));
}

#[test]
fn verify_caputo_reports_xi_discrepancy_as_informational() {
    let o = mlfrac(&["verify", "--suite", "caputo", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let info: Vec<&Value> = rows
        .iter()
        .filter(|r| r["check"] == "xi_printed_formula")
        .collect();
    assert!(!info.is_empty());
    assert!(info.iter().all(|r| r["status"] == "info"));
}

#[test]
fn verify_bounds_suite_passes() {
    assert!(mlfrac(&["verify", "--suite", "bounds"]).status.success());
}

#[test]
fn front_certifies_divergence() {
    let o = mlfrac(&[
        "front",
        "--alpha",
        "0.5",
        "--beta",
        "0.4",
        "--c",
        "1",
        "--t-min",
        "5",
        "--t-max",
        "40",
        "--t-steps",
        "8",
    ]);
    assert!(o.status.success());
    let logs: Vec<f64> = csv_column(&stdout(&o), "log_u")
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    assert_eq!(logs.len(), 8);
    assert!(logs.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn front_rejects_beta_outside_scope() {
    let o = mlfrac(&[
        "front",
        "--alpha",
        "0.5",
        "--beta",
        "0.6",
        "--c",
        "1",
        "--t-min",
        "5",
        "--t-max",
        "40",
        "--t-steps",
        "8",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(0, 1/2)"));
}

#[test]
fn front_json_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("front.json");
    let o = mlfrac(&[
        "front",
        "--alpha",
        "0.75",
        "--beta",
        "0.25",
        "--c",
        "2",
        "--t-min",
        "10",
        "--t-max",
        "50",
        "--t-steps",
        "5",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(std::fs::read(&path).unwrap(), o.stdout);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "front");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for r in rows {
        for key in [
            "alpha",
            "beta",
            "c",
            "ell",
            "t",
            "x",
            "log_u",
            "log_lower_bound",
            "bracket_ok",
        ] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
    }
}
