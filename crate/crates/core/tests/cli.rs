//! End-to-end runs of the `bm` binary: exit codes, JSON shape, determinism.

use serde_json::Value;
use std::process::{Command, Output};

fn bm(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bm"));
    cmd.args(args).env_remove("BM_PRECISION_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("bm runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn h1_reports_and_agrees_with_the_table() {
    let out = bm(&["h1", "-c", "5,9,10,12", "--format", "json"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["command"], "h1");
    assert_eq!(doc["status"], "ok");
    assert_eq!(doc["input"]["coefficients"], serde_json::json!([5, 9, 10, 12]));
    assert_eq!(doc["result"]["structure"], "Z/3");
    assert_eq!(doc["result"]["agreement"], "AGREE");
    assert_eq!(doc["result"]["galois_group_order"], 27);
}

#[test]
fn trivial_h1_surface_has_no_obstruction() {
    let out = bm(&["obstruct", "-c", "1,1,1,1", "--format", "json"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["result"]["verdict"], "H1_TRIVIAL");
    assert!(doc["result"]["solvability"].as_array().unwrap().iter().all(|e| e["solvable"] == true));
}

#[test]
fn invalid_input_exits_one() {
    for args in [
        &["h1", "-c", "0,1,1,1"][..],
        &["h1", "-c", "1,2,3"],
        &["local", "-c", "5,9,10,12", "--place", "4"],
        &["scan", "--range", "3..1"],
        &["frobnicate"],
    ] {
        let out = bm(args, &[]);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = bm(&["obstruct", "-c", "5,9,10,12"], &[("BM_PRECISION_CAP", "0")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn precision_cap_makes_the_verdict_inconclusive() {
    let out = bm(&["obstruct", "-c", "5,9,10,12", "--format", "json"], &[("BM_PRECISION_CAP", "3")]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    assert_eq!(doc["status"], "inconclusive");
    assert_eq!(doc["input"]["precision_cap"], 3);
}

#[test]
fn nontrivial_h1_without_charts_exits_three() {
    let out = bm(&["obstruct", "-c", "2,3,5,7", "--format", "json"], &[]);
    assert_eq!(out.status.code(), Some(3));
    let doc = json(&out);
    assert_eq!(doc["status"], "missing-charts");
    assert_eq!(doc["result"]["h1"], "Z/3");
}

#[test]
fn missing_chart_file_is_an_error() {
    let out = bm(&["obstruct", "-c", "5,9,10,12", "--charts", "/nonexistent/charts.toml"], &[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn json_is_identical_across_job_counts() {
    for args in [
        &["obstruct", "-c", "5,9,10,12", "--format", "json"][..],
        &["scan", "--range", "1..2", "--format", "json"],
        &["local", "-c", "5,9,10,12", "--place", "2,5", "--format", "json"],
    ] {
        let run = |jobs: &str| {
            let mut a = args.to_vec();
            a.extend(["--jobs", jobs]);
            bm(&a, &[("BM_PRECISION_CAP", "4")])
        };
        let (one, four) = (run("1"), run("4"));
        assert_eq!(one.status.code(), four.status.code(), "{args:?}");
        assert_eq!(one.stdout, four.stdout, "{args:?}");
    }
}

#[test]
fn out_flag_writes_the_document() {
    let dir = std::env::temp_dir().join(format!("bm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("lines.json");
    let out = bm(&["lines", "-c", "5,9,10,12", "--format", "json", "--out", path.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["result"]["lines"].as_array().unwrap().len(), 27);
    assert_eq!(doc["result"]["gram_rank"], 7);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn scan_counts_every_tuple() {
    let out = bm(&["scan", "--range", "1..2", "--format", "json"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["result"]["tuples"], 16);
    assert_eq!(doc["result"]["agree"], 16);
}
