use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lattice-area"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn distribution(v: &Value) -> Vec<(i64, String)> {
    v["distribution"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["area"].as_i64().unwrap(), e["count"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn four_step_distribution() {
    let v = json(&["enumerate-square", "--n", "4"]);
    assert_eq!(v["n"], 4);
    assert_eq!(v["meta"]["lattice"], "square");
    assert_eq!(v["meta"]["n"], 4);
    assert_eq!(
        distribution(&v),
        vec![(-1, "4".into()), (0, "28".into()), (1, "4".into())]
    );
    let v = json(&["enumerate-square", "--n", "2"]);
    assert_eq!(distribution(&v), vec![(0, "4".into())]);
}

#[test]
fn single_area_matches_full_distribution() {
    let full = distribution(&json(&["enumerate-square", "--n", "20"]));
    for area in ["0", "-3", "7"] {
        let v = json(&["enumerate-square", "--n", "20", "--area", area]);
        let a: i64 = area.parse().unwrap();
        let expected = full.iter().find(|(x, _)| *x == a).map(|(_, c)| c.clone()).unwrap();
        assert_eq!(v["count"].as_str().unwrap(), expected);
        assert_eq!(v["meta"]["flags"]["area"], a);
    }
}

#[test]
fn formula_and_walk_counter_agree() {
    let a = json(&["enumerate-square", "--n", "10"]);
    let b = json(&["oracle-square", "--n", "10"]);
    assert_eq!(distribution(&a), distribution(&b));
}

#[test]
fn csv_output() {
    let out = run(&["enumerate-square", "--n", "4", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "area,count\n-1,4\n0,28\n1,4\n");
}

#[test]
fn output_is_independent_of_worker_count() {
    let one = run(&["enumerate-square", "--n", "18", "--workers", "1"]);
    let eight = run(&["enumerate-square", "--n", "18", "--workers", "8"]);
    assert!(one.status.success() && eight.status.success());
    assert_eq!(one.stdout, eight.stdout);
}

#[test]
fn writes_to_file() {
    let path = std::env::temp_dir().join(format!("lattice-area-cli-{}.json", std::process::id()));
    let out = run(&["oracle-square", "--n", "6", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    let total: u64 = distribution(&v).iter().map(|(_, c)| c.parse::<u64>().unwrap()).sum();
    assert_eq!(total, 400);
}

#[test]
fn triangular_and_compositions() {
    let v = json(&["enumerate-triangular", "--n", "6"]);
    let total: u64 = distribution(&v).iter().map(|(_, c)| c.parse::<u64>().unwrap()).sum();
    assert_eq!(total, 90);
    assert_eq!(v["meta"]["lattice"], "triangular");
    let v = json(&["enumerate-triangular", "--n", "4"]);
    assert!(distribution(&v).is_empty());

    let v = json(&["compositions", "--n", "3", "--g", "3"]);
    assert_eq!(v["compositions"].as_array().unwrap().len(), 9);
    let v = json(&["compositions", "--n", "2"]);
    let coeffs: Vec<&str> = v["compositions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["coeff"].as_str().unwrap())
        .collect();
    assert_eq!(coeffs, vec!["1/2", "1"]);
}

#[test]
fn spectral_checks_pass() {
    for check in ["kreft", "cluster", "trace", "secular"] {
        let v = json(&["spectral", "--p", "2", "--q", "9", "--check", check]);
        assert_eq!(v["pass"], true, "{check}");
    }
    for check in ["cluster", "secular"] {
        let v = json(&["spectral", "--p", "1", "--q", "11", "--check", check, "--g", "3"]);
        assert_eq!(v["pass"], true, "{check}");
        assert_eq!(v["meta"]["lattice"], "triangular");
    }
}

#[test]
fn levy_origin_row() {
    let v = json(&["levy", "--n", "16"]);
    let rows = v["rows"].as_array().unwrap();
    let origin = rows.iter().find(|r| r["area"] == 0).unwrap();
    assert!((origin["levy"].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-15);
}

#[test]
fn verify_oracle_suite() {
    let v = json(&["verify", "--suite", "oracle-equivalence"]);
    assert_eq!(v["pass"], true);
    let checks = v["suites"][0]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 8);
    assert!(checks[7]["label"].as_str().unwrap().contains("n=16"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["enumerate-square", "--n", "4", "--bogus"]).status.code(), Some(64));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["enumerate-square", "--n", "4", "--workers", "0"]).status.code(), Some(64));
    assert_eq!(run(&["enumerate-square", "--n", "5"]).status.code(), Some(1));
    assert_eq!(run(&["spectral", "--p", "2", "--q", "4", "--check", "kreft"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--suite", "nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["enumerate-square", "--n", "26"]).status.code(), Some(2));
    assert_eq!(run(&["oracle-square", "--n", "32"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate-triangular", "--n", "18"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
