use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_expcomb")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&all)).unwrap()
}

#[test]
fn worked_example() {
    assert_eq!(stdout(&["kneading", "0 3 0 1/2 inf"]), "0 2 0 0 *");
    assert_eq!(stdout(&["internal", "0 3 0 1/2 inf"]), "(1,0)->(2,2)->(4,-2)->(5,inf)");
    assert_eq!(stdout(&["angled", "0 3 0 1/2 inf"]), "(1,1/2)->(2,1+1/2)->(4,-1-1/2)->(5,inf)");
    assert_eq!(stdout(&["from-internal", "(1,0)->(2,2)->(4,-2)->(5,inf)"]), "0 2 0 0 *");
    assert_eq!(stdout(&["from-angled", "(1,1/2)->(2,1+1/2)->(4,-1-1/2)->(5,inf)"]), "0 3 0 1/2 inf");
}

#[test]
fn characteristic_pair_and_boundaries() {
    assert_eq!(stdout(&["char", "0 1 1 0 1/2 inf"]), "lower=(0 1 1 0 0 2) upper=(0 2 0 1 0 1)");
    assert_eq!(stdout(&["sector-boundary", "0 1 1 0 1/2 inf", "2"]), "(0 1 1 0 0 2)");
    assert_eq!(stdout(&["sector-boundary", "inf", "-2"]), "(-2)");
    assert_eq!(stdout(&["from-boundary", "(0 1 1 0 0 2)"]), "0 1 1 0 1/2 inf");
    assert_eq!(stdout(&["itinerary", "(0 1)", "1/2 inf"]), "(0)");
    assert_eq!(
        stdout(&["sector", "inf", "--height-index", "0"]),
        "height-index=0 label=1/2 kneading-entry=0 sector-number=0 lower=(0) upper=(1)"
    );
}

#[test]
fn bifurcation_and_classification() {
    assert_eq!(stdout(&["bifurcate", "inf", "--label", "1/2", "--angle", "1/3"]), "0 1/2 inf");
    assert_eq!(stdout(&["bifurcate", "inf", "--height", "1/3"]), "0 1/2 inf");
    assert_eq!(stdout(&["classify", "0 1/2 inf"]), "satellite parent=inf rotation=1/3");
    assert_eq!(stdout(&["parent", "0 1/2 inf"]), "inf");
    assert_eq!(stdout(&["parent", "1 -1/2 inf"]), "none");
}

#[test]
fn order_and_wakes() {
    assert_eq!(stdout(&["compare", "1/2 inf", "(0 1)"]), "greater");
    assert_eq!(stdout(&["compare", "(0 1)", "0 1 (0 1)"]), "equal");
    assert_eq!(stdout(&["wake-contains", "1/2 inf", "0 3 0 1/2 inf"]), "true");
}

#[test]
fn tuning_arcs_and_orbits() {
    assert_eq!(stdout(&["tune", "1/2 inf", "(0)"]), "(1 0)");
    assert_eq!(stdout(&["tune", "1/2 inf", "(0)", "--variant", "lower"]), "(0 1)");
    assert_eq!(stdout(&["tune", "0 3 0 1/2 inf", "-1/2 inf"]), "0 3 0 1 0 0 3 0 1/2 inf");
    assert_eq!(
        stdout(&["arc", "inf", "0 3 0 1/2 inf", "--kneading-entry", "0"]),
        "period=2 component=1/2 inf sector-entry=2"
    );
    assert_eq!(stdout(&["orbits", "1/2 inf"]), "finite 1");
    assert_eq!(stdout(&["orbits", "0 3 0 1/2 inf"]), "infinite");
}

#[test]
fn json_output() {
    let d = json(&["describe", "1/2 inf"]);
    assert_eq!(d["period"], 2);
    assert_eq!(d["kneading"], "0 *");
    assert_eq!(d["characteristic"]["lower"], "(0 1)");
    assert_eq!(d["classification"]["type"], "satellite");
    assert_eq!(json(&["kneading", "-1/2 inf"])["kneading"], "-1 *");

    let tree: serde_json::Value = serde_json::from_str(&stdout(&["tree", "--max", "2", "--format", "json"])).unwrap();
    assert_eq!(tree["nodes"].as_array().unwrap().len(), 3);
    assert_eq!(tree["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn dot_tree_is_deterministic() {
    let first = stdout(&["tree", "--max", "3", "--bound", "1"]);
    assert!(first.starts_with("digraph bifurcations {"));
    assert!(first.contains("\"inf\" -> \"1/2 inf\" [label=\"1/2\"];"));
    assert_eq!(first, stdout(&["tree", "--max", "3", "--bound", "1"]));
}

#[test]
fn checks_report_counterexamples() {
    assert_eq!(stdout(&["check", "order-laws", "--max", "3", "--bound", "1"]), "order-laws: 4179 cases, 0 counterexamples");
    assert!(!run(&["check", "no-such-suite"]).status.success());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["kneading", "0 x inf"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "inf"]).status.code(), Some(1));
    assert_eq!(run(&["arc", "inf", "(0)", "--kneading-entry", "0"]).status.code(), Some(1));
}
