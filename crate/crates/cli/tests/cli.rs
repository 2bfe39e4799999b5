use std::process::{Command, Output};

use qmu::qcore::C64;
use qmu::qhermite::{hermite_by_recurrence, HermiteArg};
use serde_json::Value;

fn qmu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmu")).args(args).env_remove("QMU_MAX_TERMS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

fn value(v: &Value) -> C64 {
    C64::new(v["value"]["re"].as_f64().unwrap(), v["value"]["im"].as_f64().unwrap())
}

#[test]
fn mu_alpha_zero_is_constant() {
    let o = qmu(&["eval", "mu_alpha", "--u", "0.2+0.05i", "--v", "-0.1+0.02i", "--alpha", "0", "--tau", "0.9i", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let q = (-2.0 * std::f64::consts::PI * 0.9f64).exp();
    let want = C64::new(0.0, -q.powf(-0.125));
    assert!((value(&v) - want).norm() < 1e-12 * want.norm());
    assert_eq!(v["function"], "mu_alpha");
    assert_eq!(v["inputs"]["tau"]["im"], 0.9);
    assert!(v["terms"].as_u64().unwrap() > 0);
}

#[test]
fn hermite_degree_one() {
    let v = json(&qmu(&["eval", "hermite", "--n", "1", "--w", "0.25", "--q", "0.3", "--json"]));
    let want = 2.0 * (0.25 * std::f64::consts::PI).cos();
    assert!((value(&v) - C64::new(want, 0.0)).norm() < 1e-15);
}

#[test]
fn plain_output_lists_value_error_and_terms() {
    let o = qmu(&["eval", "theta_q", "--x", "0.5", "--q", "0.3"]);
    let s = stdout(&o);
    assert!(s.starts_with("value "), "{s}");
    assert!(s.contains("err_estimate") && s.contains("terms_used"));
}

#[test]
fn exit_codes() {
    let o = qmu(&["eval", "mu_alpha", "--u", "0.2", "--v", "0.9i", "--alpha", "0.5", "--tau", "0.9i"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("v within 1e-6 of Z+Z tau"));
    assert_eq!(o.stderr.iter().filter(|&&b| b == b'\n').count(), 1);

    assert_eq!(qmu(&["eval", "mu", "--u", "0.2+", "--v", "0.1", "--tau", "0.9i"]).status.code(), Some(2));
    assert_eq!(qmu(&["eval", "mu", "--u", "0.2", "--tau", "0.9i"]).status.code(), Some(2));
    assert_eq!(qmu(&["eval", "nonsense"]).status.code(), Some(2));
    assert_eq!(qmu(&["eval", "theta_q", "--x", "0.5", "--q", "0.3", "--zz", "1"]).status.code(), Some(2));
    assert_eq!(qmu(&["eval", "theta11", "--u", "0.1", "--tau", "-0.5i"]).status.code(), Some(3));
    assert_eq!(qmu(&["bogus"]).status.code(), Some(2));

    let o = Command::new(env!("CARGO_BIN_EXE_qmu"))
        .args(["eval", "theta_q", "--x", "0.5", "--q", "0.9"])
        .env("QMU_MAX_TERMS", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    let o = Command::new(env!("CARGO_BIN_EXE_qmu"))
        .args(["eval", "theta_q", "--x", "0.5", "--q", "0.9"])
        .env("QMU_MAX_TERMS", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn series_and_lists() {
    // 1phi0(a;-;q,z) = (az)_inf/(z)_inf
    let v = json(&qmu(&["eval", "phi", "--upper", "0.4", "--lower", "", "--q", "0.3", "--x", "0.5", "--json"]));
    let p = |x: f64| (0..200).fold(1.0, |acc, j| acc * (1.0 - x * 0.3f64.powi(j)));
    assert!((value(&v).re - p(0.2) / p(0.5)).abs() < 1e-12);
    assert_eq!(v["inputs"]["upper"]["re"], 0.4);
}

#[test]
fn hermite_table_matches_recurrence() {
    let o = qmu(&["table", "hermite", "--n", "0..4", "--w", "0.25", "--q", "0.3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("param,re,im,err"));
    let want = hermite_by_recurrence(4, &HermiteArg::new(C64::new(0.25, 0.0), C64::new(0.3, 0.0)));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    for (n, row) in rows.iter().enumerate() {
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(f[0], n.to_string());
        let got = C64::new(f[1].parse().unwrap(), f[2].parse().unwrap());
        assert!((got - want[n]).norm() < 1e-13, "{row}");
    }
}

#[test]
fn table_rows_and_json() {
    let s = stdout(&qmu(&["table", "mock_theta", "--which", "f0", "--q", "0.05:0.30:0.05", "--format", "csv"]));
    assert_eq!(s.lines().count(), 7);
    let o = qmu(&["table", "theta11", "--u", "0.1", "--tau", "0.8i:1.0i:0.1i", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(v[2]["param"], "1.0i");
}

#[test]
fn gauss_sum_table() {
    let s = stdout(&qmu(&["table", "gauss_sum", "--N", "1..10"]));
    let rows: Vec<&str> = s.lines().skip(1).collect();
    assert_eq!(rows.len(), 10);
    for row in rows {
        let err: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!(err <= 1e-11, "{row}");
    }
}

#[test]
fn malformed_ranges() {
    for r in ["4..1", "1..x", "0.1:0.5", "0.5:0.1:0.1"] {
        assert_eq!(qmu(&["table", "hermite", "--n", r, "--w", "0.25", "--q", "0.3"]).status.code(), Some(2), "{r}");
    }
    assert_eq!(qmu(&["table", "hermite", "--n", "3", "--w", "0.25", "--q", "0.3"]).status.code(), Some(2));
    assert_eq!(qmu(&["table", "hermite", "--n", "0..3", "--w", "0.25", "--q", "0.1:0.3:0.1"]).status.code(), Some(2));
}

#[test]
fn verify_report_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = qmu(&["verify", "--suite", "mu-alpha", "--samples", "50", "--seed", "7", "--report", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], "qmu-report/1");
    assert_eq!(v["run"]["seed"], 7);
    assert_eq!(v["run"]["samples"], 50);
    assert!(v["run"]["tol"].is_null());
    let cases = v["cases"].as_array().unwrap();
    assert!(!cases.is_empty());
    let names: Vec<&str> = cases.iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for c in cases {
        // one record per identity row, each tagged with its sample index
        let idx: std::collections::BTreeSet<u64> =
            c["samples"].as_array().unwrap().iter().map(|s| s["index"].as_u64().unwrap()).collect();
        assert_eq!(idx.len(), 50);
        for key in ["anchor", "tol", "max_rel_residual", "pass", "seed", "rejected"] {
            assert!(!c[key].is_null(), "{key}");
        }
        let s = &c["samples"][0];
        for key in ["inputs", "lhs", "rhs", "abs_residual", "rel_residual"] {
            assert!(!s[key].is_null(), "{key}");
        }
    }
    assert!(stdout(&o).contains("PASS  mu-alpha.translation"));
}

#[test]
fn impossible_tolerance_fails() {
    let o = qmu(&["verify", "--suite", "mu-alpha", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stdout(&o).contains("FAIL"));
    assert_eq!(qmu(&["verify", "--suite", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn expected_failures_are_reported() {
    let s = stdout(&qmu(&["verify", "--suite", "transform.borel-laplace-printed", "--samples", "5"]));
    assert!(s.contains("fails as expected"), "{s}");
    let list = stdout(&qmu(&["verify", "--list"]));
    assert!(list.lines().count() >= 30);
    assert!(list.contains("hermite.minus-degree"));
}
