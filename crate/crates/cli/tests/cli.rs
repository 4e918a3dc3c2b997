//! End-to-end tests against the built binary: exit codes, JSON reports,
//! DOT output and byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.push("fixtures");
    path.push(name);
    path.to_string_lossy().into_owned()
}

fn catfrac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catfrac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn validate_category_succeeds_and_echoes() {
    let out = catfrac(&["--input", &fixture("p2.json"), "--json", "validate"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["command"], "validate");
    let echo = &report["category_echo"];
    assert_eq!(echo["objects"].as_array().unwrap().len(), 3);
    // 5 morphisms: n, d and three identities.
    assert_eq!(echo["morphisms"].as_array().unwrap().len(), 5);
}

#[test]
fn validated_category_round_trips() {
    let out = catfrac(&["--input", &fixture("p2.json"), "--json", "validate"]);
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    // Re-feed the echoed tables as a fresh input document.
    let doc = serde_json::json!({ "category": report["category_echo"] });
    let dir = std::env::temp_dir().join("catfrac-roundtrip.json");
    std::fs::write(&dir, serde_json::to_string(&doc).unwrap()).unwrap();
    let again = catfrac(&["--input", dir.to_str().unwrap(), "--json", "validate"]);
    assert_eq!(again.status.code(), Some(0), "{again:?}");
    let report2: serde_json::Value = serde_json::from_str(&stdout_of(&again)).unwrap();
    assert_eq!(report["category_echo"], report2["category_echo"]);
}

#[test]
fn broken_table_exits_with_input_error() {
    let out = catfrac(&["--input", &fixture("broken.json"), "validate"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("missing composite"), "{err}");
}

#[test]
fn dilate_p2_lists_the_new_fraction() {
    let out = catfrac(&["--input", &fixture("p2.json"), "--json", "dilate"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let homs = report["homs"].as_array().unwrap();
    let xz = homs
        .iter()
        .find(|h| h["source"] == "X" && h["target"] == "Z")
        .unwrap();
    assert_eq!(xz["classes"], serde_json::json!(["n*~d"]));
    assert_eq!(report["stabilized"], serde_json::json!(true));
}

#[test]
fn hom_command_shows_one_pair() {
    let out = catfrac(&["--input", &fixture("p2.json"), "--json", "hom", "X", "Z"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["homs"].as_array().unwrap().len(), 1);
}

#[test]
fn check_locasdil_passes_on_p1() {
    let out = catfrac(&["--input", &fixture("p1.json"), "check", "locasdil"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
}

#[test]
fn check_suite_passes_on_p2() {
    for what in ["propdil", "bimorphism", "exc", "universal", "representability"] {
        let out = catfrac(&["--input", &fixture("p2.json"), "check", what]);
        assert_eq!(out.status.code(), Some(0), "check {what}: {out:?}");
    }
}

#[test]
fn check_iterate_and_inclusion_on_chain4() {
    let out = catfrac(&["--input", &fixture("chain4.json"), "check", "iterate"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let out = catfrac(&["--input", &fixture("chain4.json"), "check", "inclusion"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
}

#[test]
fn localize_z6_monoid() {
    let out = catfrac(&["--input", &fixture("z6_monoid.json"), "--json", "localize"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let homs = report["homs"].as_array().unwrap();
    assert_eq!(homs[0]["classes"].as_array().unwrap().len(), 3);
}

#[test]
fn dilate_z6_collection_center() {
    let out = catfrac(&["--input", &fixture("z6_monoid.json"), "--json", "dilate"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let homs = report["homs"].as_array().unwrap();
    assert_eq!(homs[0]["classes"].as_array().unwrap().len(), 3);
}

#[test]
fn blowup_and_ma_compare_identify() {
    let out = catfrac(&["--input", &fixture("z6_semiring.json"), "blowup"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let out = catfrac(&["--input", &fixture("z6_semiring.json"), "--json", "ma-compare"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert!(report["notes"]
        .as_array()
        .unwrap()
        .iter()
        .any(|n| n.as_str().unwrap().contains("full identification")));
}

#[test]
fn export_dot_graph_counts_match() {
    let out = catfrac(&["--input", &fixture("p2.json"), "export-dot", "graph"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let dot = stdout_of(&out);
    // 5 forward solid edges and 3 dashed backward lines.
    assert_eq!(dot.matches("->").count(), 8);
    assert_eq!(dot.matches("style=dashed").count(), 3);
}

#[test]
fn export_dot_result_shows_the_new_arrow() {
    let out = catfrac(&["--input", &fixture("p2.json"), "export-dot", "result"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let dot = stdout_of(&out);
    assert!(dot.contains("n*~d"), "{dot}");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let p2 = fixture("p2.json");
    let z6 = fixture("z6_semiring.json");
    let chain4 = fixture("chain4.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["--input", &p2, "--json", "dilate"],
        vec!["--input", &z6, "--json", "ma-compare"],
        vec!["--input", &chain4, "--json", "check", "iterate"],
    ];
    for args in cases {
        let first = catfrac(&args);
        let second = catfrac(&args);
        assert_eq!(stdout_of(&first), stdout_of(&second));
    }
}

#[test]
fn hom_reports_carry_audit_chains() {
    let out = catfrac(&["--input", &fixture("z6_monoid.json"), "--json", "hom", "pt", "pt"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let homs = report["homs"].as_array().unwrap();
    // At least one class has a nontrivial replayable chain from its
    // alternating representative to the canonical word.
    assert!(homs.iter().any(|h| h["audit"]
        .as_array()
        .is_some_and(|a| !a.is_empty())));
}

#[test]
fn dual_dilatation_runs_and_stabilizes() {
    let out = catfrac(&["--input", &fixture("dual_p1.json"), "--json", "dilate"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["stabilized"], serde_json::json!(true));
    assert!(report["notes"]
        .as_array()
        .unwrap()
        .iter()
        .any(|n| n.as_str().unwrap().contains("right fractions")));
}

#[test]
fn search_backend_with_tight_budget_reports_unknown() {
    let out = catfrac(&[
        "--input",
        &fixture("z6_monoid.json"),
        "--backend",
        "search",
        "--budget-len",
        "3",
        "--budget-states",
        "500",
        "localize",
    ]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn empty_object_list_is_a_schema_error() {
    let doc = serde_json::json!({ "category": { "objects": [] } });
    let path = std::env::temp_dir().join("catfrac-empty.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = catfrac(&["--input", path.to_str().unwrap(), "validate"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("/category/objects"), "{err}");
}

#[test]
fn check_commands_run_on_the_monoid_fixture() {
    for what in ["propdil", "bimorphism", "exc", "locasdil"] {
        let out = catfrac(&["--input", &fixture("z6_monoid.json"), "check", what]);
        assert_eq!(out.status.code(), Some(0), "check {what}: {out:?}");
    }
}

#[test]
fn inapplicable_backend_is_an_input_error() {
    let out = catfrac(&[
        "--input",
        &fixture("z6_monoid.json"),
        "--backend",
        "poset",
        "localize",
    ]);
    assert_eq!(out.status.code(), Some(3), "{out:?}");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("backend inapplicable"), "{err}");
}
