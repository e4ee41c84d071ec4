use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use transgression_cli::json::qseries_from_json;
use transgression_core::thetalib::e4;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_transgression")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn theta_expand_listed_forms() {
    let o = run(&["theta-expand", "--form", "delta1", "--qorder", "48"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "1/4 + 6q + 6q^2");
    let o = run(&["theta-expand", "--form", "e4", "--qorder", "48"]);
    assert_eq!(stdout(&o).trim(), "1 + 240q + 2160q^2");
}

#[test]
fn theta_expand_w_coefficient_is_twice_eta_cube() {
    // η³ = q^{1/8}(1 − 3q + 5q³ − …)
    let o = run(&["theta-expand", "--kind", "theta", "--wdeg", "1", "--qorder", "72"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "w^1: 2q^(1/8) - 6q^(9/8)");
}

#[test]
fn bad_flags_exit_2() {
    assert_eq!(code(&run(&["theta-expand", "--form", "delta9"])), 2);
    assert_eq!(code(&run(&["theta-expand", "--qorder", "-1"])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&run(&["verify"])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "numeric", "--tau", "0.5"])), 2);
}

#[test]
fn verify_dim3_passes() {
    let o = run(&["verify", "--suite", "dim3", "--seed", "7"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn verify_flat_zero_shears_skips_e4() {
    let o = run(&["verify", "--suite", "flat", "--seed", "0", "--shears", "0", "--json", "--no-volatile"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let e = v["entries"].as_array().unwrap().iter().find(|e| e["id"] == "flat.psiW_7_e4").unwrap();
    assert_eq!(e["status"], "skipped");
    assert!(e["reason"].as_str().unwrap().contains("degenerate"));
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "--suite", "transgression", "--seed", "3", "--qorder", "24", "--json"];
    let strip = |o: Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("volatile");
        v
    };
    let a = strip(run(&args));
    assert_eq!(a, strip(run(&args)));
    let o = run(&["verify", "--suite", "transgression", "--seed", "3", "--qorder", "24", "--json", "--no-volatile"]);
    assert_eq!(a, serde_json::from_slice::<Value>(&o.stdout).unwrap());
}

#[test]
fn text_and_json_reports_agree() {
    let t = stdout(&run(&["verify", "--suite", "theta"]));
    let v: Value = serde_json::from_str(&stdout(&run(&["verify", "--suite", "theta", "--json"]))).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(t.lines().filter(|l| l.starts_with("PASS ")).count(), entries.len());
    for e in entries {
        assert!(t.contains(e["id"].as_str().unwrap()));
        assert!(!e["anchor"].as_str().unwrap().is_empty());
    }
}

#[test]
fn scenario_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (name, extra) in [("flat.json", vec!["--flat", "--m", "7", "--n", "3"]), ("gen.json", vec!["--m", "5", "--n", "2"])] {
        let f = dir.path().join(name);
        let mut args = vec!["scenario", "gen", "--seed", "1", "--out", path(&f)];
        args.extend(extra);
        assert_eq!(code(&run(&args)), 0);
        let o = run(&["scenario", "validate", path(&f)]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        // same seed, same file
        let again = dir.path().join("again.json");
        args[5] = path(&again);
        run(&args);
        assert_eq!(std::fs::read(&f).unwrap(), std::fs::read(&again).unwrap());
    }
}

#[test]
fn false_flatness_claim_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("s.json");
    run(&["scenario", "gen", "--m", "3", "--n", "2", "--seed", "4", "--out", path(&f)]);
    let text = std::fs::read_to_string(&f).unwrap().replace("\"claims_flat\": false", "\"claims_flat\": true");
    std::fs::write(&f, text).unwrap();
    let o = run(&["scenario", "validate", path(&f)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("nonzero entry"));
}

#[test]
fn schema_errors_carry_pointers() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("s.json");
    run(&["scenario", "gen", "--m", "3", "--n", "2", "--seed", "4", "--out", path(&f)]);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    let term = v["A1"][0][0][0].as_object_mut().expect("a term in entry (0, 0)");
    term.insert("coeff".into(), Value::String("x/2".into()));
    std::fs::write(&f, v.to_string()).unwrap();
    let o = run(&["scenario", "validate", path(&f)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("/A1/0/0/0/coeff"));
}

fn flat_seven_forms(n: &str) -> Vec<transgression_core::exactscalar::QSeries> {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("flat.json");
    let o = run(&["scenario", "gen", "--flat", "--m", "7", "--n", n, "--seed", "1", "--out", path(&f)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["cs-compute", "--scenario", path(&f), "--kind", "psiW", "--qorder", "72", "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    v["form"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|t| t["degree"] == 7)
        .map(|t| qseries_from_json(&t["coeff"], "").unwrap())
        .collect()
}

#[test]
fn cs_compute_flat_seven_form_is_e4_multiple() {
    let sevens = flat_seven_forms("4");
    assert!(!sevens.is_empty());
    for c in sevens {
        assert!(c.sub(&e4(c.trunc()).scale(&c.coeff(0))).is_zero());
    }
    // tr[A⁷] vanishes identically below rank 4
    assert!(flat_seven_forms("3").is_empty());
}

#[test]
fn verify_all_passes_with_many_identities() {
    let o = run(&["verify", "--suite", "all", "--seed", "7", "--qorder", "72", "--json", "--no-volatile"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert!(entries.len() >= 20);
    assert!(entries.iter().all(|e| e["anchor"].as_str().is_some_and(|a| !a.is_empty())));
    for id in ["modular.expansion.delta1", "theta.jacobi", "anomaly.agw_12", "eleven.cancellation", "flat.psiW_7_e4", "loop.tshift"] {
        assert!(entries.iter().any(|e| e["id"] == id), "{} missing", id);
    }
}
