use std::process::{Command, Output};

fn cliffgauge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliffgauge")).args(args).output().expect("binary runs")
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let p = std::env::temp_dir().join(format!("cliffgauge-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn verify_algebra_passes() {
    let out = cliffgauge(&["verify", "algebra", "--trials", "50", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["schema"], "cliffgauge-report/1");
    assert_eq!(report["summary"]["pass"], true);
    let rec = &report["records"][0];
    for key in ["check", "anchor", "trials", "max_abs_error", "pass"] {
        assert!(rec.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn impossible_tolerance_exits_one() {
    let out = cliffgauge(&["verify", "lie", "--trials", "5", "--tol", "0", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains(",false"));
}

#[test]
fn timings_only_on_request() {
    let plain = cliffgauge(&["verify", "frames", "--trials", "3"]);
    assert!(!String::from_utf8_lossy(&plain.stdout).contains("wall_time_s"));
    let timed = cliffgauge(&["verify", "frames", "--trials", "3", "--timings"]);
    assert!(String::from_utf8_lossy(&timed.stdout).contains("wall_time_s"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cliffgauge(&["verify", "gravity"]).status.code(), Some(2));
    assert_eq!(cliffgauge(&["verify", "all", "--chi", "half"]).status.code(), Some(2));
    assert_eq!(cliffgauge(&["verify", "all", "--config", "/nonexistent/cfg.json"]).status.code(), Some(2));
    assert_eq!(cliffgauge(&["convergence", "--h", "-1"]).status.code(), Some(2));
    assert_eq!(cliffgauge(&["convergence", "--n", "4"]).status.code(), Some(2));
}

#[test]
fn malformed_config_reports_pointer() {
    let p = temp_file(
        "bad.json",
        r#"{"fields": {"c1": [{"coeff": [1, 0], "blade": "e12", "factors": [{"mono": [9, 1]}]}]}}"#,
    );
    let out = cliffgauge(&["verify", "lepton", "--config", p.to_str().unwrap()]);
    std::fs::remove_file(&p).ok();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("\"/fields/c1/0/factors/0\""), "{err}");
}

#[test]
fn config_drives_lepton_suite() {
    let sample = include_str!("../data/sample_config.json");
    let p = temp_file("sample.json", sample);
    let out = cliffgauge(&["verify", "lepton", "--trials", "10", "--config", p.to_str().unwrap()]);
    std::fs::remove_file(&p).ok();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn table_and_demo() {
    let table = cliffgauge(&["table", "--format", "csv"]);
    assert_eq!(table.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&table.stdout).contains("e0123,e0123,-1,e"));
    let demo = cliffgauge(&["demo"]);
    assert_eq!(demo.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&demo.stdout).contains("quark.dirac_residual"));
}
