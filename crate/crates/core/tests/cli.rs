use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn metatheta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metatheta"))
        .args(args)
        .env_remove("METATHETA_GAUSS_CACHE")
        .output()
        .unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn dims_exits_zero() {
    let out = metatheta(&["dims", "--rmax", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}

#[test]
fn double_cover_series_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s.json");
    let out = metatheta(&["series", "--n", "2", "--s", "0.6+0.3j", "--bound", "100", "--json", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = read_json(&p);
    assert_eq!(v["value"], serde_json::json!([0.0, 0.0]));
    assert!(v["terms"].as_array().unwrap().len() > 10);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(metatheta(&["badcmd"]).status.code(), Some(2));
    let out = metatheta(&["gauss", "--d", "3+1w", "--nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    // Ramified modulus is an input error.
    assert_eq!(metatheta(&["gauss", "--d", "2+1w"]).status.code(), Some(2));
    assert_eq!(metatheta(&["tau", "--n", "5", "--m", "2"]).status.code(), Some(2));
}

#[test]
fn symbol_and_kubota_reports() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("sym.json");
    let out = metatheta(&["symbol", "--ring", "gau", "--a", "1+2i", "--m", "3", "--json", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = read_json(&p);
    assert_eq!(v["n"], 4);
    assert!(v["exponent"].as_u64().unwrap() < 4);
    assert_eq!(v["value"].as_array().unwrap().len(), 2);

    let k = dir.path().join("k.json");
    let out = metatheta(&["kubota", "--a", "1", "--b", "0", "--c", "0", "--d", "1", "--json", k.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(read_json(&k)["exponent"], 0);
    // det != 1
    assert_eq!(metatheta(&["kubota", "--a", "2", "--b", "0", "--c", "0", "--d", "1"]).status.code(), Some(2));
}

#[test]
fn gauss_cache_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let run = |d: &str| {
        Command::new(env!("CARGO_BIN_EXE_metatheta"))
            .args(["gauss", "--d", d])
            .env("METATHETA_GAUSS_CACHE", &cache)
            .output()
            .unwrap()
    };
    let first = run("3+1w");
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(run("3+1w").stdout, first.stdout);
    let text = std::fs::read_to_string(cache.join("gauss-eis.cache")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("GSCACHE v1 eis"));
    assert_eq!(lines.count(), 1);
}

#[test]
fn broken_side_condition_exits_one_and_still_writes() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("m.json");
    std::fs::write(
        &model,
        r#"{"ring": "eis", "primes": [
            {"p": "3+1w", "lambda": [0.5, 0.0], "beta": [1.0, 0.0], "xi1_arg": 0.3,
             "side_condition": false, "eta_exponent": 0, "xi2_arg": 1.9}]}"#,
    )
    .unwrap();
    let rep = dir.path().join("r.json");
    let out = metatheta(&["local-euler", "--model", model.to_str().unwrap(), "--K", "6", "--json", rep.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = read_json(&rep);
    assert_eq!(v["passed"], false);
    let conds: Vec<&str> = v["detected_conditions"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert!(conds.iter().any(|c| c.contains("xi1*xi2 = 1 (violated")));
}

#[test]
fn euler_and_cancel_checks_pass_on_defaults() {
    assert_eq!(metatheta(&["euler-check", "--K", "3"]).status.code(), Some(0));
    assert_eq!(metatheta(&["cancel-check", "--K", "5"]).status.code(), Some(0));
    assert_eq!(metatheta(&["n4-report", "--bound", "50"]).status.code(), Some(0));
    assert_eq!(metatheta(&["unfold-verify", "--samples", "20", "--seed", "4"]).status.code(), Some(0));
    assert_eq!(metatheta(&["coset-count", "--bound", "30"]).status.code(), Some(0));
}
