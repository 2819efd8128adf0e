//! End-to-end checks of the `wmw-design` binary: file inputs, effect
//! specs, JSON output, and error behaviour.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wmw-design"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wmw-design-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn plan_example_text_output() {
    let out = run(&["plan", "--example", "seizures"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("p*            0.2730"), "output:\n{text}");
    assert!(text.contains("n1            24"), "output:\n{text}");
    assert!(text.contains("Noether       26/26"), "output:\n{text}");
}

#[test]
fn plan_example_json_fields() {
    let out = run(&["plan", "--example", "albumin", "--allocation", "optimal", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n1"], 909);
    assert_eq!(v["n2"], 842);
    assert_eq!(v["N_total"], 1751);
    assert!((v["p_star"].as_f64().unwrap() - 0.474375).abs() < 1e-12);
    assert!(v["interval_lower"].as_f64().unwrap() <= v["t"].as_f64().unwrap() + 1e-5);
    assert!(v["interval_upper"].as_f64().unwrap() >= v["t"].as_f64().unwrap() - 1e-5);
    assert_eq!(v["noether_n_per_group"], 2667);
}

#[test]
fn plan_from_sample_file_with_effect() {
    let g1 = write_temp(
        "seizures.txt",
        &wmw_design::datasets::SEIZURES_PLACEBO
            .iter()
            .map(|v| format!("{v}\n"))
            .collect::<String>(),
    );
    let out = run(&[
        "plan",
        "--g1",
        g1.to_str().unwrap(),
        "--effect",
        "scale:0.5:floor",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n1"], 24);
    assert_eq!(v["n2"], 24);
}

#[test]
fn plan_from_frequency_table() {
    let table = write_temp(
        "nasal.csv",
        "score,substance1,substance2\n0,64,48\n1,12,25\n2,4,6\n3,0,1\n",
    );
    let out = run(&["plan", "--table", table.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["p_star"].as_f64().unwrap() - 0.599).abs() < 5e-4);
    assert_eq!(v["n1"], 85);
}

#[test]
fn plan_with_ordinal_effect_matches_table() {
    let g1 = write_temp(
        "nasal_g1.csv",
        "0,64\n1,12\n2,4\n", // value,weight rows
    );
    let out = run(&[
        "plan",
        "--g1",
        g1.to_str().unwrap(),
        "--effect",
        "ordshift:0.25:up:cats=0,1,2",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["p_star"].as_f64().unwrap() - 0.599).abs() < 5e-4);
}

#[test]
fn power_example_json_round_trip() {
    let args = [
        "power", "--example", "kidney", "--n1", "30", "--n2", "30", "--reps", "1000",
        "--seed", "11", "--format", "json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same seed must give identical bytes");
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["replications"], 1000);
    assert_eq!(v["seed"], 11);
    let p = v["power_hat"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&p));
    assert_eq!(
        v["rejections"].as_u64().unwrap() as f64 / 1000.0,
        p,
        "power must equal rejections/replications"
    );
}

#[test]
fn power_without_sizes_plans_implicitly() {
    let out = run(&["power", "--example", "kidney", "--reps", "200", "--seed", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n1"], 30);
    assert_eq!(v["n2"], 30);
}

#[test]
fn unknown_example_fails_cleanly() {
    let out = run(&["plan", "--example", "nope"]);
    assert!(!out.status.success());
    assert!(out.stdout.is_empty(), "nothing may reach stdout on error");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("seizures"), "error should list valid names: {err}");
}

#[test]
fn parse_error_reports_path_and_line() {
    let g1 = write_temp("bad.txt", "1.0\n2.0\noops\n");
    let g2 = write_temp("ok.txt", "1.5\n2.5\n");
    let out = run(&["plan", "--g1", g1.to_str().unwrap(), "--g2", g2.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(out.stdout.is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.txt:3"), "expected path:line in: {err}");
}

#[test]
fn null_effect_fails_cleanly() {
    let g = write_temp("same.txt", "1\n2\n3\n");
    let out = run(&["plan", "--g1", g.to_str().unwrap(), "--g2", g.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(out.stdout.is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("null effect"), "stderr: {err}");
}

#[test]
fn conflicting_inputs_are_rejected_by_parser() {
    let out = run(&["plan", "--example", "kidney", "--effect", "shift:0.3"]);
    assert!(!out.status.success());
    assert!(out.stdout.is_empty());
}

#[test]
fn fixed_allocation_rate() {
    let out = run(&["plan", "--example", "nasal", "--allocation", "fixed:0.3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["t"].as_f64().unwrap(), 0.3);
    let n1 = v["n1"].as_u64().unwrap() as f64;
    let n2 = v["n2"].as_u64().unwrap() as f64;
    // the requested split is honoured up to conservative rounding
    assert!((n1 / (n1 + n2) - 0.3).abs() < 0.01);
}

#[test]
fn bad_allocation_spec_fails() {
    let out = run(&["plan", "--example", "nasal", "--allocation", "thirds"]);
    assert!(!out.status.success());
    assert!(out.stdout.is_empty());
}
