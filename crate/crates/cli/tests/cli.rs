use std::process::{Command, Output};

use serde_json::Value;
use spingraph_core::render::parse_json;

fn spingraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spingraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = spingraph(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

fn data_rows(table: &str) -> Vec<&str> {
    table.lines().filter(|l| l.trim_start().starts_with(|c: char| c.is_ascii_digit())).collect()
}

#[test]
fn classes_table_genus_3() {
    let out = ok(&["classes", "--genus", "3"]);
    assert_eq!(data_rows(&out).len(), 4);
    assert!(out.lines().any(|l| l == "M=4"), "{out}");
    assert!(out.contains("N(0)=1 N(1)=2 N(2)=1"));
}

#[test]
fn classes_by_order() {
    let out = ok(&["classes", "--genus", "4", "--order", "2"]);
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 2, "{out}");
    assert!(rows.iter().all(|r| r.split_whitespace().next() == Some("2")));
}

#[test]
fn classes_json_genus_2() {
    let v: Value = serde_json::from_str(&ok(&["classes", "--genus", "2", "--format", "json"])).unwrap();
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 2);
    assert_eq!(classes[0]["khat"], serde_json::json!([3]));
    assert_eq!(classes[1]["khat"], serde_json::json!([1, 2]));
    assert_eq!(classes[1]["branch_number"], 2);
    assert_eq!(v["total"], 2);
}

#[test]
fn standard_graph_dot_genus_2() {
    let dot = ok(&["graph", "--genus", "2", "--standard", "--format", "dot"]);
    let nodes = dot.lines().filter(|l| l.trim_end().ends_with("\";") && !l.contains("->")).count();
    let straight = dot.lines().filter(|l| l.contains("dir=none")).count();
    let dashed = dot.lines().filter(|l| l.contains("style=dashed")).count();
    assert_eq!((nodes, straight, dashed), (6, 6, 0), "{dot}");
}

#[test]
fn exceptional_graph_json() {
    let payload = ok(&["graph", "--genus", "3", "--partition", "1,1,2", "--format", "json"]);
    let v: Value = serde_json::from_str(&payload).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(v["branch_number"], 2);
    // round-trips through the documented schema
    let graph = parse_json(&payload).unwrap().to_graph().unwrap();
    assert_eq!(graph.vertex_count(), 6);
}

#[test]
fn weierstrass_graph_is_complete() {
    let dot = ok(&["graph", "--genus", "3", "--weierstrass"]);
    let edges: Vec<&str> = dot.lines().filter(|l| l.contains("->")).collect();
    assert_eq!(edges.len(), 6);
    for a in 0..4 {
        for b in a + 1..4 {
            let line = format!("  \"W{a}\" -> \"W{b}\" [dir=none, label=\"1\"];");
            assert!(edges.contains(&line.as_str()), "missing {line}");
        }
    }
}

#[test]
fn graph_selector_errors() {
    for args in [
        &["graph", "--genus", "3", "--partition", "1,x"][..],
        &["graph", "--genus", "3", "--partition", "1,1,3"],
        &["graph", "--genus", "3", "--partition", "0,4"],
        &["graph", "--genus", "3"],
        &["graph", "--genus", "3", "--standard", "--weierstrass"],
        &["graph", "--genus", "1", "--standard"],
        &["graph", "--genus", "3", "--standard", "--format", "table"],
        &["classes", "--genus", "3", "--order", "3"],
        &["classes", "--genus", "100"],
        &["frobnicate"],
    ] {
        let out = spingraph(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn genus_ceiling_can_be_raised() {
    let out = ok(&["--genus-ceiling", "100", "classes", "--genus", "70", "--order", "69"]);
    assert_eq!(data_rows(&out).len(), 1);
}

#[test]
fn types_genus_2() {
    let out = ok(&["types", "--genus", "2"]);
    let rows: Vec<&str> = out.lines().filter(|l| l.starts_with('(')).collect();
    assert_eq!(rows.len(), 3);
    for t in ["(0,4)", "(1,2)", "(2,0)"] {
        assert!(rows.iter().any(|r| r.starts_with(t)), "{t}");
    }
}

#[test]
fn types_genus_3_flags_unpublished() {
    let out = ok(&["types", "--genus", "3", "--check-paper"]);
    let rows: Vec<&str> = out.lines().filter(|l| l.starts_with('(')).collect();
    assert_eq!(rows.len(), 14);
    let flagged: Vec<&str> = rows.iter().copied().filter(|r| r.ends_with("NOT-IN-PUBLISHED-LIST")).collect();
    assert_eq!(flagged.len(), 5);
    assert_eq!(rows.iter().filter(|r| r.ends_with("  published")).count(), 9);
    assert!(out.contains("total 14"));
}

#[test]
fn types_json_respects_budget() {
    let v: Value = serde_json::from_str(&ok(&["types", "--genus", "4", "--format", "json"])).unwrap();
    let text = v.to_string();
    let types = v["types"].as_array().unwrap_or_else(|| panic!("{text}"));
    assert_eq!(types.len(), 45);
    assert!(types.iter().all(|t| t["branch_total"] == 16), "{text}");
}

#[test]
fn verify_exit_codes() {
    let clean = spingraph(&["verify", "--max-genus", "8"]);
    assert_eq!(clean.status.code(), Some(0));
    let text = stdout(&clean);
    assert!(text.lines().all(|l| l.starts_with("PASS ")), "{text}");

    assert_eq!(spingraph(&["verify", "--max-genus", "1"]).status.code(), Some(1));

    let faulty = spingraph(&["verify", "--max-genus", "3", "--inject-fault"]);
    assert_eq!(faulty.status.code(), Some(2));
    assert!(stdout(&faulty).lines().any(|l| l.starts_with("FAIL ")));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["classes", "--genus", "6", "--format", "json"][..],
        &["graph", "--genus", "5", "--partition", "1,2,3", "--format", "json"],
        &["graph", "--genus", "5", "--partition", "2,4", "--format", "dot"],
        &["types", "--genus", "5", "--check-paper"],
    ] {
        assert_eq!(ok(args), ok(args), "{args:?}");
    }
}

#[test]
fn in_process_runner_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = spingraph_cli::run(["spingraph", "classes", "--genus", "3"], &mut out, &mut err);
    assert_eq!(code, spingraph_cli::EXIT_OK);
    assert_eq!(String::from_utf8(out).unwrap(), ok(&["classes", "--genus", "3"]));
    assert!(err.is_empty());
}
