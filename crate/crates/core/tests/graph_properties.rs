use std::collections::BTreeMap;

use proptest::prelude::*;
use spingraph_core::atlas::{classes_for_genus, enumerate_surface_types, leaf_census};
use spingraph_core::graphs::{
    canonical_class, exceptional_graph, graph_branch_number, head_vertices, khat_at,
    standard_graph, validate, weierstrass_graph, Violation,
};
use spingraph_core::render::{parse_json, to_dot, to_json};
use spingraph_core::{Divisor, Genus, PointLabel, SpinGraph};

fn genus(g: u32) -> Genus {
    Genus::new(g).unwrap()
}

#[test]
fn vertex_count_plus_branch_number_is_constant() {
    for g in 2..=12 {
        for c in classes_for_genus(genus(g)) {
            let graph = exceptional_graph(&c);
            let total = graph.vertex_count() as u32 + graph_branch_number(&graph);
            assert_eq!(total, 2 * g + 2, "g={g} {c}");
        }
        assert_eq!(standard_graph(genus(g)).vertex_count() as u32, 2 * g + 2);
    }
}

#[test]
fn heads_read_back_the_class() {
    for g in 2..=8 {
        for c in classes_for_genus(genus(g)) {
            let graph = exceptional_graph(&c);
            let heads = head_vertices(&graph).unwrap();
            assert!(heads.contains(&PointLabel::base()), "g={g} {c}");
            assert!(heads.contains(&PointLabel::base().conjugate()), "g={g} {c}");
            for h in &heads {
                assert_eq!(khat_at(&graph, h).unwrap(), c.khat().parts(), "g={g} {c} at {h}");
            }
        }
    }
}

#[test]
fn non_exceptional_graphs_have_no_heads() {
    assert!(head_vertices(&standard_graph(genus(3))).is_err());
    assert!(canonical_class(&weierstrass_graph(genus(3))).is_err());
}

#[test]
fn surface_type_leaf_census_accounts_for_every_branch_point() {
    for g in 2..=5 {
        for t in enumerate_surface_types(genus(g)) {
            let census = leaf_census(&t).unwrap();
            let from_leaves: u64 = census
                .exceptional
                .iter()
                .map(|l| u64::from(l.count) * 2 * u64::from(g - l.order))
                .sum();
            assert_eq!(from_leaves, 4 * u64::from(g));
            for size in census.exceptional_leaf_sizes() {
                assert!(size >= 2 && size <= 2 * g as usize + 2);
            }
        }
    }
}

#[test]
fn dropping_a_vertex_is_reported() {
    let graph = standard_graph(genus(3));
    let broken = graph.without_vertex(&PointLabel::indexed(2));
    let violations = validate(&broken);
    assert!(!violations.is_empty());
    assert!(violations.iter().any(|v| matches!(v, Violation::VertexCount { .. })));
}

// --- DOT grammar -----------------------------------------------------------
//
// graph     : 'digraph' ID '{' stmt* '}'
// stmt      : node_stmt | edge_stmt | attr_stmt, each ending in ';'
// attr_stmt : 'node' attr_list
// node_stmt : ID attr_list?
// edge_stmt : ID '->' ID attr_list?
// attr_list : '[' (ID '=' ID (',' ID '=' ID)*)? ']'

#[derive(Debug, PartialEq, Eq, Clone)]
enum Tok {
    Id(String),
    Sym(&'static str),
}

fn lex(src: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut n = 0;
    while n < chars.len() {
        let c = chars[n];
        if c.is_whitespace() {
            n += 1;
        } else if c == '"' {
            let mut s = String::new();
            n += 1;
            loop {
                match chars.get(n) {
                    None => return Err("unterminated string".into()),
                    Some('"') => break,
                    Some('\\') => {
                        s.push(*chars.get(n + 1).ok_or("dangling escape")?);
                        n += 2;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        n += 1;
                    }
                }
            }
            n += 1;
            out.push(Tok::Id(s));
        } else if c == '-' && chars.get(n + 1) == Some(&'>') {
            out.push(Tok::Sym("->"));
            n += 2;
        } else if let Some(sym) = ["{", "}", "[", "]", "=", ",", ";"].iter().find(|s| s.starts_with(c)) {
            out.push(Tok::Sym(sym));
            n += 1;
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let start = n;
            while n < chars.len() && (chars[n].is_ascii_alphanumeric() || chars[n] == '_') {
                n += 1;
            }
            out.push(Tok::Id(chars[start..n].iter().collect()));
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

#[derive(Debug, Default)]
struct DotGraph {
    nodes: Vec<String>,
    edges: Vec<(String, String, BTreeMap<String, String>)>,
}

fn parse_dot(src: &str) -> Result<DotGraph, String> {
    let toks = lex(src)?;
    let mut pos = 0;
    let next = |pos: &mut usize| -> Result<Tok, String> {
        let t = toks.get(*pos).cloned().ok_or("unexpected end")?;
        *pos += 1;
        Ok(t)
    };
    let id = |t: Tok| match t {
        Tok::Id(s) => Ok(s),
        other => Err(format!("expected ID, got {other:?}")),
    };
    if next(&mut pos)? != Tok::Id("digraph".into()) {
        return Err("expected digraph".into());
    }
    id(next(&mut pos)?)?;
    if next(&mut pos)? != Tok::Sym("{") {
        return Err("expected {".into());
    }
    let mut graph = DotGraph::default();
    loop {
        let head = next(&mut pos)?;
        if head == Tok::Sym("}") {
            break;
        }
        let first = id(head)?;
        let mut target = None;
        if toks.get(pos) == Some(&Tok::Sym("->")) {
            pos += 1;
            target = Some(id(next(&mut pos)?)?);
        }
        let mut attrs = BTreeMap::new();
        if toks.get(pos) == Some(&Tok::Sym("[")) {
            pos += 1;
            loop {
                let t = next(&mut pos)?;
                if t == Tok::Sym("]") {
                    break;
                }
                let key = id(t)?;
                if next(&mut pos)? != Tok::Sym("=") {
                    return Err("expected =".into());
                }
                attrs.insert(key, id(next(&mut pos)?)?);
                match next(&mut pos)? {
                    Tok::Sym(",") => {}
                    Tok::Sym("]") => break,
                    other => return Err(format!("bad attribute separator {other:?}")),
                }
            }
        }
        if next(&mut pos)? != Tok::Sym(";") {
            return Err("expected ;".into());
        }
        match target {
            Some(to) => graph.edges.push((first, to, attrs)),
            None if first == "node" => {}
            None => graph.nodes.push(first),
        }
    }
    if pos != toks.len() {
        return Err("trailing tokens".into());
    }
    Ok(graph)
}

fn check_dot(graph: &SpinGraph) {
    let dot = to_dot(graph);
    let parsed = parse_dot(&dot).unwrap_or_else(|e| panic!("{e}\n{dot}"));
    let ids: Vec<String> = graph.labels().map(|l| l.ident()).collect();
    assert_eq!(parsed.nodes, ids);
    let straight: Vec<_> = parsed.edges.iter().filter(|e| e.2.get("dir").map(String::as_str) == Some("none")).collect();
    let dashed: Vec<_> = parsed.edges.iter().filter(|e| e.2.get("style").map(String::as_str) == Some("dashed")).collect();
    assert_eq!(straight.len() + dashed.len(), parsed.edges.len());
    assert_eq!(straight.len(), graph.edges().len());
    assert_eq!(dashed.len(), graph.edges().iter().filter(|e| e.arc.is_some()).count());
    for (u, v, attrs) in &straight {
        let e = graph
            .edge_between(&PointLabel::parse(u).unwrap(), &PointLabel::parse(v).unwrap())
            .unwrap();
        assert_eq!(attrs["label"], e.multiplicity.to_string());
    }
    for (from, to, attrs) in &dashed {
        let e = graph
            .edge_between(&PointLabel::parse(from).unwrap(), &PointLabel::parse(to).unwrap())
            .unwrap();
        let arc = e.arc.unwrap();
        assert_eq!(arc.from.ident(), *from);
        assert_eq!(attrs["label"], arc.label.to_string());
    }
}

#[test]
fn dot_output_parses_for_small_genera() {
    for g in 2..=6 {
        check_dot(&standard_graph(genus(g)));
        check_dot(&weierstrass_graph(genus(g)));
        for c in classes_for_genus(genus(g)) {
            check_dot(&exceptional_graph(&c));
        }
    }
}

#[test]
fn dot_validator_rejects_garbage() {
    assert!(parse_dot("digraph \"x\" { \"a\" -> ; }").is_err());
    assert!(parse_dot("digraph \"x\" { \"a\" }").is_err());
    assert!(parse_dot("graph \"x\" { }").is_err());
}

// --- JSON ------------------------------------------------------------------

fn any_graph() -> impl Strategy<Value = SpinGraph> {
    (2u32..=9, any::<prop::sample::Index>(), 0u8..4).prop_map(|(g, idx, pick)| match pick {
        0 => standard_graph(genus(g)),
        1 => weierstrass_graph(genus(g)),
        _ => {
            let classes = classes_for_genus(genus(g));
            exceptional_graph(&classes[idx.index(classes.len())])
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trips(graph in any_graph()) {
        let payload = to_json(&graph);
        let back = parse_json(&payload).unwrap().to_graph().unwrap();
        prop_assert_eq!(&back, &graph);
        prop_assert_eq!(to_json(&back), payload);
    }

    #[test]
    fn export_is_deterministic(graph in any_graph()) {
        prop_assert_eq!(to_dot(&graph), to_dot(&graph.clone()));
        prop_assert_eq!(to_json(&graph), to_json(&graph.clone()));
    }

    #[test]
    fn conjugating_every_label_keeps_the_class(graph in any_graph()) {
        let conj: BTreeMap<PointLabel, Divisor> = graph
            .vertices()
            .map(|(v, a)| (v.conjugate(), a.conjugate()))
            .collect();
        let mirrored = SpinGraph::from_divisors(graph.genus(), graph.kind().clone(), conj).unwrap();
        prop_assert!(validate(&mirrored).is_empty());
        prop_assert_eq!(mirrored.edges().len(), graph.edges().len());
        if graph.class().is_some() {
            let back = canonical_class(&mirrored).ok();
            prop_assert_eq!(back.as_ref(), graph.class());
        }
    }
}

#[test]
fn unknown_json_fields_are_rejected() {
    let payload = to_json(&standard_graph(genus(2)));
    let mut value: serde_json::Value = serde_json::from_str(&payload).unwrap();
    value["extra"] = serde_json::json!(1);
    assert!(parse_json(&value.to_string()).is_err());
}
