use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use threshold_cli::{run, Output, EXIT_BUDGET, EXIT_FALSE, EXIT_INVALID, EXIT_OK};

fn threshold(args: &[&str]) -> Output {
    run(std::iter::once("threshold").chain(args.iter().copied()))
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Runs a command, checks the exit code, and validates stdout against a schema.
fn json_of(args: &[&str], code: i32, schema_name: &str) -> Value {
    let out = threshold(args);
    assert_eq!(out.code, code, "{args:?}: stderr {}", out.stderr);
    let value: Value = serde_json::from_str(&out.stdout).unwrap();
    let validator = jsonschema::validator_for(&schema(schema_name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?} violates {schema_name}: {errors:?}");
    value
}

#[test]
fn alpha_of_cycle_eight() {
    let v = json_of(&["alpha", "--game", "cycle:8"], EXIT_OK, "alpha");
    assert_eq!(v["alpha"], "2/1");
    assert_eq!(v["quarter_n"], "2/1");
    assert_eq!(v["weighted"], false);
}

#[test]
fn decision_false_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let c8 = dir.path().join("c8.json");
    let gen = threshold(&["gen", "cycle:8", "--out", c8.to_str().unwrap()]);
    assert_eq!(gen.code, EXIT_OK);
    // a `cycle:n` spec is a game for `gen`; rewrite it as a graph file
    let game: Value = serde_json::from_str(&std::fs::read_to_string(&c8).unwrap()).unwrap();
    let edges: Vec<Value> = game["minimal_winning"].as_array().unwrap().clone();
    std::fs::write(&c8, serde_json::json!({"n": 8, "edges": edges}).to_string()).unwrap();

    let v = json_of(&["graph-decide", "--graph", c8.to_str().unwrap(), "--a", "1"], EXIT_FALSE, "graph-decide");
    assert_eq!(v["answer"], false);
    assert_eq!(v["alpha"], "2/1");
    let v = json_of(&["graph-decide", c8.to_str().unwrap(), "--a", "2"], EXIT_OK, "graph-decide");
    assert_eq!(v["answer"], true);
}

#[test]
fn induced_matching_branch_shape() {
    // 2P2: two disjoint edges force α ≥ 1 > 1/2
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("2p2.dimacs");
    std::fs::write(&path, "c two edges\np edge 4 2\ne 1 2\ne 3 4\n").unwrap();
    let v = json_of(&["graph-decide", path.to_str().unwrap(), "--a", "1/2"], EXIT_FALSE, "graph-decide");
    assert_eq!(v["branch"], "induced_matching");
    assert_eq!(v["k"], 2);
}

#[test]
fn gadget_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = dir.path().join("c5.txt");
    std::fs::write(&c5, "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n").unwrap();
    let gstar = dir.path().join("gstar.json");
    let out = threshold(&["gadget", "--graph", c5.to_str().unwrap(), "--out", gstar.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&gstar).unwrap()).unwrap();
    assert!(jsonschema::validator_for(&schema("graph")).unwrap().is_valid(&written));
    assert_eq!(written["n"], 10);
    let v = json_of(&["graph-alpha", gstar.to_str().unwrap()], EXIT_OK, "graph-alpha");
    assert_eq!(v["alpha"], "1/1");
}

#[test]
fn min_norm_and_tightness() {
    let v = json_of(&["min-norm", "--game", "cycle:6"], EXIT_OK, "min-norm");
    assert_eq!(v["certified"], true);
    for x in v["point"].as_array().unwrap() {
        assert!((x.as_f64().unwrap() - 0.5).abs() < 1e-4);
    }
    let v = json_of(&["tightness", "--game", "cycle:6"], EXIT_OK, "tightness");
    assert_eq!(v["tight"], true);
    let v = json_of(&["tightness", "--game", "wvg:5", "--seed", "2"], EXIT_OK, "tightness");
    assert_eq!(v["tight"], false);
}

#[test]
fn csg_on_weighted_and_incomplete_games() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    // [3; 2,1,1,1]
    std::fs::write(&path, r#"{"n":4,"minimal_winning":[[1,2],[1,3],[1,4],[2,3,4]]}"#).unwrap();
    let v = json_of(&["csg", "--game", path.to_str().unwrap()], EXIT_OK, "csg");
    assert_eq!(v["k"], 2);
    assert_eq!(v["s"], serde_json::json!([2, 3]));
    assert_eq!(v["ratio"], "4/5");
    assert_eq!(v["min_winning"], "5/6");
    assert_eq!(v["max_losing"], "2/3");

    std::fs::write(&path, r#"{"n":6,"minimal_winning":[[1,2],[3,4,5,6]]}"#).unwrap();
    let out = threshold(&["csg", "--game", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("not complete"));
}

#[test]
fn generators_are_deterministic_and_valid() {
    let a = threshold(&["gen", "random-graph:8:12", "--seed", "9"]);
    let b = threshold(&["gen", "random-graph:8:12", "--seed", "9"]);
    assert_eq!(a, b);
    assert_eq!(a.code, EXIT_OK);
    let g: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(g["edges"].as_array().unwrap().len(), 12);
    json_of(&["gen", "random-graph:8:12", "--seed", "9"], EXIT_OK, "graph");
    let v = json_of(&["gen", "cycle:4"], EXIT_OK, "game");
    assert_eq!(v["minimal_winning"], serde_json::json!([[1, 2], [1, 4], [2, 3], [3, 4]]));
    let v = json_of(&["gen", "wvg:6", "--seed", "3"], EXIT_OK, "game");
    assert_eq!(v["weights"].as_array().unwrap().len(), 6);
    json_of(&["gen", "random-game:7:5", "--seed", "1"], EXIT_OK, "game");
}

#[test]
fn every_command_is_reproducible() {
    let commands: &[&[&str]] = &[
        &["alpha", "--game", "random-game:7:6", "--seed", "4"],
        &["min-norm", "--game", "random-game:6:4", "--seed", "2"],
        &["tightness", "--game", "cycle:4"],
        &["graph-alpha", "random-graph:7:9", "--seed", "5"],
        &["graph-decide", "random-graph:8:10", "--a", "3/2", "--seed", "1"],
        &["gadget", "cycle:5"],
        &["csg", "--game", "wvg:7", "--seed", "8"],
        &["verify-conjecture", "--n", "6", "--count", "5"],
    ];
    for args in commands {
        let first = threshold(args);
        assert!(first.code == EXIT_OK || first.code == EXIT_FALSE, "{args:?}: {}", first.stderr);
        assert_eq!(first, threshold(args), "{args:?}");
    }
}

#[test]
fn verify_conjecture_outputs() {
    let v = json_of(&["verify-conjecture", "cycle:8", "wvg:6"], EXIT_OK, "verify-conjecture");
    assert_eq!(v["all_hold"], true);
    assert_eq!(v["entries"][0]["ratio"], "1/1");
    let v = json_of(&["verify-conjecture", "--n", "7", "--count", "6", "--seed", "10"], EXIT_OK, "verify-conjecture");
    assert_eq!(v["entries"].as_array().unwrap().len(), 6);
}

#[test]
fn table_format() {
    let out = threshold(&["alpha", "--game", "cycle:4", "--format", "table"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.lines().any(|l| l.starts_with("alpha") && l.trim_end().ends_with("1/1")));
}

#[test]
fn invalid_inputs_exit_two() {
    assert_eq!(threshold(&["alpha", "--game", "cycle:5"]).code, EXIT_INVALID);
    assert_eq!(threshold(&["alpha", "--game", "/no/such/file.json"]).code, EXIT_INVALID);
    assert_eq!(threshold(&["gen", "hypercube:3"]).code, EXIT_INVALID);
    assert_eq!(threshold(&["gen", "random-graph:8"]).code, EXIT_INVALID);
    assert_eq!(threshold(&["graph-decide", "cycle:6", "--a", "one"]).code, EXIT_INVALID);
    assert_eq!(threshold(&["frobnicate"]).code, EXIT_INVALID);
    assert_eq!(threshold(&["min-norm", "--game", "cycle:4", "--tol", "0"]).code, EXIT_INVALID);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("loop.txt");
    std::fs::write(&path, "p edge 3 1\ne 2 2\n").unwrap();
    assert_eq!(threshold(&["graph-alpha", path.to_str().unwrap()]).code, EXIT_INVALID);
    assert_eq!(threshold(&["--help"]).code, EXIT_OK);
}

#[test]
fn budgets_exit_three() {
    let out = threshold(&["alpha", "--game", "cycle:26"]);
    assert_eq!(out.code, EXIT_BUDGET, "{}", out.stderr);
    let out = threshold(&["gadget", "random-graph:40:60"]);
    assert_eq!(out.code, EXIT_BUDGET, "{}", out.stderr);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_threshold");
    let ok = Command::new(bin).args(["alpha", "--game", "cycle:8"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["alpha"], "2/1");
    let no = Command::new(bin).args(["graph-decide", "cycle:8", "--a", "1"]).output().unwrap();
    assert_eq!(no.status.code(), Some(EXIT_FALSE));
    let bad = Command::new(bin).args(["alpha", "--game", "cycle:3"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INVALID));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error:"));
}
