use std::path::PathBuf;
use std::process::{Command, Output};

fn minfill(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minfill"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("minfill-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn line4() -> PathBuf {
    scratch("line4.txt", "4\n0 1 2 3\n1 0 1 2\n2 1 0 1\n3 2 1 0\n")
}

#[test]
fn snowflake_vertices() {
    let out = minfill(&["vertices", "--tree", "((1,2),((3,4),(5,6)));"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 12);
    assert_eq!(lines.iter().filter(|l| l.starts_with("1/4: ")).count(), 4);
    assert!(lines.contains(&"1/4: (2,1,0,0,1,0,1,1,0,2,0,1,1,0,2)"));
    assert!(lines.contains(&"1/2: (1,1,0,0,0,0,0,1,0,1,0,0,0,1,1)"));
}

#[test]
fn four_point_formula_in_latex() {
    let out = minfill(&["formula", "--n", "4", "--shape", "caterpillar", "--format", "latex"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains(r"\frac{1}{2}\big(d_{12}+d_{14}+d_{23}+d_{34}\big)"));
    assert!(text.contains(r"\frac{1}{2}\big(d_{12}+d_{13}+d_{24}+d_{34}\big)"));
}

#[test]
fn minimal_filling_of_the_line() {
    let path = line4();
    let out = minfill(&["mf", "--metric", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("weight: 3\n"));
    assert!(text.contains("tree: ((1,2),(3,4));"));
    assert!(text.contains("tour: k=1: 1-2-3-4"));

    let json = minfill(&["mf", "--metric", path.to_str().unwrap(), "--format", "json"]);
    let value: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(value["weight"], "3");
    assert_eq!(value["tour"], serde_json::json!([1, 2, 3, 4]));
}

#[test]
fn output_is_identical_for_any_job_count() {
    let path = line4();
    let p = path.to_str().unwrap();
    let one = minfill(&["--jobs", "1", "mf", "--metric", p, "--format", "json"]);
    let two = minfill(&["--jobs", "3", "mf", "--metric", p, "--format", "json"]);
    assert_eq!(one.stdout, two.stdout);
    let a = minfill(&["--jobs", "1", "vertices", "--n", "6", "--shape", "snowflake"]);
    let b = minfill(&["--jobs", "2", "vertices", "--n", "6", "--shape", "snowflake"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_outputs_parse() {
    for args in [
        &["topologies", "--n", "5", "--format", "json"][..],
        &["cutmatrix", "--n", "4", "--shape", "caterpillar", "--format", "json"],
        &["vertices", "--n", "5", "--shape", "caterpillar", "--format", "json"],
        &["tours", "--n", "6", "--shape", "snowflake", "--format", "json"],
        &["formula", "--n", "5", "--shape", "caterpillar", "--format", "json"],
    ] {
        let out = minfill(args);
        assert!(out.status.success(), "{args:?}");
        serde_json::from_slice::<serde_json::Value>(&out.stdout).unwrap();
    }
    let topologies: Vec<String> =
        serde_json::from_slice(&minfill(&["topologies", "--n", "5", "--format", "json"]).stdout).unwrap();
    assert_eq!(topologies.len(), 15);
}

#[test]
fn cut_matrix_text() {
    let out = minfill(&["cutmatrix", "--tree", "((1,2),(3,4));"]);
    assert_eq!(
        stdout(&out),
        "(1,2) (1,3) (1,4) (2,3) (2,4) (3,4)\n1 1 1 0 0 0\n1 0 0 1 1 0\n0 1 0 1 0 1\n0 0 1 0 1 1\n0 1 1 1 1 0\n"
    );
}

#[test]
fn validate_and_domain_errors() {
    let ok = minfill(&["validate", "--metric", line4().to_str().unwrap(), "--strict"]);
    assert!(ok.status.success());
    assert_eq!(stdout(&ok), "valid: 4 points\n");

    let bad = scratch("bad.txt", "3\n0 1 5\n1 0 1\n5 1 0\n");
    let out = minfill(&["validate", "--metric", bad.to_str().unwrap(), "--strict"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(1,2,3)"));

    let out = minfill(&["mpf", "--metric", line4().to_str().unwrap(), "--n", "5", "--shape", "caterpillar"]);
    assert_eq!(out.status.code(), Some(1));

    let out = minfill(&["validate", "--metric", "/nonexistent/metric.txt"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(minfill(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(minfill(&["vertices", "--bogus"]).status.code(), Some(2));
    let out = minfill(&["vertices"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn mpf_both_senses() {
    let p = line4();
    let free = minfill(&["mpf", "--metric", p.to_str().unwrap(), "--tree", "((1,3),(2,4));"]);
    let nonneg = minfill(&["mpf", "--metric", p.to_str().unwrap(), "--tree", "((1,3),(2,4));", "--nonneg"]);
    assert!(free.status.success() && nonneg.status.success());
    assert!(stdout(&free).contains("weight: 4\n"));
    assert!(stdout(&nonneg).contains("weight: 4\n"));
}

#[test]
fn lp_debug_verdicts() {
    let optimal = scratch("opt.json", r#"{"a": [[1, 1, 1]], "b": [4], "c": ["-1", "-2", 0]}"#);
    let out = minfill(&["lp-debug", optimal.to_str().unwrap()]);
    assert_eq!(stdout(&out), "optimal -8\nx = (0, 4, 0)\n");

    let infeasible = scratch("inf.json", r#"{"a": [[1], [1]], "b": [0, 1], "c": [0]}"#);
    assert_eq!(stdout(&minfill(&["lp-debug", infeasible.to_str().unwrap()])), "infeasible\n");

    let unbounded = scratch("unb.json", r#"{"a": [[1, -1]], "b": [0], "c": [-1, 0]}"#);
    let out = minfill(&["lp-debug", unbounded.to_str().unwrap(), "--format", "json"]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["status"], "unbounded");
}

#[test]
fn verify_subcommand_passes() {
    let out = minfill(&["verify"]);
    let text = stdout(&out);
    assert!(out.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 8);
}
