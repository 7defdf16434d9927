use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crystal-forge"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn mult_prints_two() {
    let o = run(&["mult", "--diagram", "A2", "--target", "1,1", "--factors", "1,1", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2\n");
}

#[test]
fn crystal_dot_has_three_nodes() {
    let o = run(&["crystal", "--diagram", "A2", "--hw", "1,0", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("digraph"));
    assert_eq!(out.matches("[label=\"(").count(), 3);
    assert!(out.contains("color=red"));
}

#[test]
fn non_dominant_weight_is_a_domain_error() {
    let o = run(&["crystal", "--diagram", "A2", "--hw", "-1,0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("dominant"));
    assert!(o.stdout.is_empty());
}

#[test]
fn cap_exceeded_exits_two() {
    let o = run(&["crystal", "--diagram", "A2", "--hw", "5,5", "--max-vertices", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let o = run(&["tensor", "--diagram", "A2", "--factors", "1,1", "1,1", "--max-vertices", "50"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["crystal", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["crystal", "--diagram", "F4", "--hw", "1,0,0,0"]).status.code(), Some(1));
    assert_eq!(run(&["crystal", "--diagram", "A2", "--hw", "1,0,0"]).status.code(), Some(1));
    assert_eq!(run(&["decompose", "--diagram", "A2", "--factors", "1,0", "--format", "dot"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn help_documents_palette() {
    let o = run(&["--help"]);
    assert!(stdout(&o).contains("0 red, 1 blue"));
}

#[test]
fn crystal_json_schema() {
    let v = json(&run(&["crystal", "--diagram", "D4", "--hw", "1,0,0,0"]));
    assert_eq!(v["schema"], "crystal-forge/1");
    assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
}

#[test]
fn decompose_json_matches_table() {
    let v = json(&run(&["decompose", "--diagram", "A2", "--factors", "1,1", "1,1"]));
    let mults: Vec<(Value, u64)> = v["summands"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| (s["weight"].clone(), s["mult"].as_u64().unwrap()))
        .collect();
    assert_eq!(mults.len(), 5);
    assert_eq!(mults.iter().map(|(_, m)| m).sum::<u64>(), 6);
    assert_eq!(v["assignment"].as_object().unwrap().len(), 64);
}

#[test]
fn branch_and_roots() {
    let o = run(&["branch", "--diagram", "A3", "--hw", "1,0,1", "--subset", "0,1", "--format", "table"]);
    assert_eq!(stdout(&o).lines().count(), 4);
    let v = json(&run(&["roots", "--diagram", "E6"]));
    assert_eq!(v["positiveRoots"].as_array().unwrap().len(), 36);
}

#[test]
fn sl2_subcommands() {
    let v = json(&run(&["sl2", "range", "--d1", "2", "--v1", "0", "--d2", "2", "--v2", "0"]));
    assert_eq!(v["v0"], serde_json::json!([0, 1, 2]));
    let v = json(&run(&["sl2", "tau2", "--d1", "2", "--v1", "0", "--u1", "1", "--d2", "2", "--v2", "0", "--u2", "1"]));
    assert_eq!((v["v0"].as_i64(), v["u"].as_i64()), (Some(1), Some(2)));
    let v = json(&run(&["sl2", "s-nonempty", "--d1", "2", "--v1", "0", "--d2", "2", "--v2", "0", "--v", "3"]));
    assert_eq!(v["nonempty"], false);
    assert_eq!(run(&["sl2", "crystal", "--d", "1", "--v0", "1"]).status.code(), Some(1));
}

#[test]
fn dims_reports_strata() {
    let v = json(&run(&[
        "dims", "--diagram", "A2", "--d", "1,1", "--v", "1,1", "--d-tuple", "1,0", "0,1", "--v-tuple", "0,0", "0,1",
        "--vt-tuple", "1,0", "0,0",
    ]));
    let s = &v["strat"];
    assert_eq!(s["dimT"], s["dimTClosed"]);
    let flag = s["dimPiFlag"].as_i64().unwrap() + s["dimFlagVariety"].as_i64().unwrap();
    assert_eq!(s["dimPiVvt"].as_i64(), Some(flag));
    let bad = run(&["dims", "--diagram", "A2", "--d", "1,1", "--v", "1,1", "--d-tuple", "1,0", "--v-tuple", "0,0"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("sums to"));
}

#[test]
fn adhm_files() {
    let v = json(&run(&["adhm", "check", "tests/data/a1_stable.json"]));
    assert_eq!(v["preprojective"], true);
    assert_eq!(v["stable"], true);
    assert_eq!(v["astStable"], true);
    let v = json(&run(&["adhm", "check", "tests/data/a1_residual.json"]));
    assert_eq!(v["preprojective"], false);
    let v = json(&run(&["adhm", "stratum", "tests/data/a1_stable.json"]));
    assert_eq!(v["stratum"]["v"], serde_json::json!([[0], [0]]));
    assert_eq!(v["stratum"]["vt"], serde_json::json!([[0], [1]]));
    assert_eq!(run(&["adhm", "check", "tests/data/missing.json"]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = ["decompose", "--diagram", "D4", "--factors", "1,0,0,0", "0,0,1,0", "0,0,0,1"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn selftest_reports_every_criterion() {
    let v = json(&run(&["selftest"]));
    let crit = v["criteria"].as_array().unwrap();
    assert_eq!(crit.len(), 10);
    assert!(crit.iter().all(|c| c["passed"] == true && c["millis"].is_u64()));
    let v = json(&run(&["selftest", "--inject-fault"]));
    let c5 = &v["criteria"][4];
    assert_eq!(c5["name"], "tensor axioms");
    assert_eq!(c5["passed"], false);
}
