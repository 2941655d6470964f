//! Deterministic DOT and JSON export of spin graphs.
//!
//! Vertex ids follow [`PointLabel::ident`]: `P`, `Pc`, `P1`..`Pr`,
//! `P1c`..`Prc`, and `W0`..`Wg` for Weierstrass points. Vertices are listed
//! in label order and edges in the order the graph stores them, so output is
//! byte-identical across runs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::atlas::ExceptionalClass;
use crate::divisor::{Divisor, Genus, PointLabel};
use crate::error::{Error, Result};
use crate::graphs::{
    epsilon_degree_of_vertex, graph_branch_number, self_exponent, GraphKind, SpinGraph,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedGraph {
    pub format: GraphFormat,
    pub payload: String,
}

pub fn render(graph: &SpinGraph, format: GraphFormat) -> RenderedGraph {
    let payload = match format {
        GraphFormat::Dot => to_dot(graph),
        GraphFormat::Json => to_json(graph),
    };
    RenderedGraph { format, payload }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub r: u32,
    pub khat: Vec<u32>,
    pub i: u32,
    pub p: Vec<u32>,
}

impl From<&ExceptionalClass> for ClassDoc {
    fn from(c: &ExceptionalClass) -> Self {
        Self {
            r: c.order(),
            khat: c.khat().parts().to_vec(),
            i: c.i(),
            p: c.p(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub point: String,
    pub mult: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: String,
    pub conjugate: String,
    pub divisor: Vec<TermDoc>,
    pub k0: u32,
    pub eps_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcDoc {
    pub from: String,
    pub label: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub u: String,
    pub v: String,
    pub mult: u32,
    pub arc: Option<ArcDoc>,
}

/// The JSON document. Field order here is the serialized order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub genus: u32,
    pub kind: String,
    pub class: Option<ClassDoc>,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    pub branch_number: u32,
}

impl GraphDoc {
    pub fn from_graph(graph: &SpinGraph) -> Self {
        let vertices = graph
            .vertices()
            .map(|(v, a)| VertexDoc {
                id: v.ident(),
                conjugate: v.conjugate().ident(),
                divisor: a
                    .iter()
                    .map(|(point, mult)| TermDoc {
                        point: point.ident(),
                        mult,
                    })
                    .collect(),
                k0: self_exponent(graph, &v).unwrap_or(0),
                eps_degree: epsilon_degree_of_vertex(graph, &v).expect("own vertex"),
            })
            .collect();
        let edges = graph
            .edges()
            .iter()
            .map(|e| EdgeDoc {
                u: e.u.ident(),
                v: e.v.ident(),
                mult: e.multiplicity,
                arc: e.arc.map(|arc| ArcDoc {
                    from: arc.from.ident(),
                    label: arc.label,
                }),
            })
            .collect();
        Self {
            genus: graph.genus().get(),
            kind: graph.kind().name().to_string(),
            class: graph.class().map(ClassDoc::from),
            vertices,
            edges,
            branch_number: graph_branch_number(graph),
        }
    }

    /// Rebuilds the graph from its divisors. Edges are re-derived and must
    /// match the listed ones.
    pub fn to_graph(&self) -> Result<SpinGraph> {
        let genus = Genus::new(self.genus)?;
        let parse = |s: &str| {
            PointLabel::parse(s).ok_or_else(|| Error::Document(format!("bad vertex id {s:?}")))
        };
        let kind = match (self.kind.as_str(), &self.class) {
            ("standard", None) => GraphKind::Standard,
            ("weierstrass", None) => GraphKind::Weierstrass,
            ("exceptional", Some(c)) => {
                GraphKind::Exceptional(ExceptionalClass::from_parts(genus, &c.khat)?)
            }
            _ => {
                return Err(Error::Document(format!(
                    "kind {:?} does not match the class field",
                    self.kind
                )))
            }
        };
        let mut vertices = BTreeMap::new();
        for v in &self.vertices {
            let divisor: Divisor = v
                .divisor
                .iter()
                .map(|t| parse(&t.point).map(|p| (p, t.mult)))
                .collect::<Result<_>>()?;
            vertices.insert(parse(&v.id)?, divisor);
        }
        let graph = SpinGraph::from_divisors(genus, kind, vertices)?;
        if GraphDoc::from_graph(&graph) != *self {
            return Err(Error::Document(
                "listed edges or vertex data disagree with the divisors".into(),
            ));
        }
        Ok(graph)
    }
}

pub fn to_json(graph: &SpinGraph) -> String {
    serde_json::to_string_pretty(&GraphDoc::from_graph(graph)).expect("plain data serializes")
}

pub fn parse_json(payload: &str) -> serde_json::Result<GraphDoc> {
    serde_json::from_str(payload)
}

/// Digraph container: straight edges are drawn without arrowheads and
/// labelled by multiplicity, arcs are dashed arrows labelled by `k`.
pub fn to_dot(graph: &SpinGraph) -> String {
    let mut out = String::new();
    let name = match graph.class() {
        Some(c) => {
            let parts: Vec<String> = c.khat().parts().iter().map(u32::to_string).collect();
            format!("exceptional_g{}_k{}", graph.genus(), parts.join("_"))
        }
        None => format!("{}_g{}", graph.kind().name(), graph.genus()),
    };
    writeln!(out, "digraph \"{name}\" {{").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for v in graph.labels() {
        writeln!(out, "  \"{v}\";").unwrap();
    }
    for e in graph.edges() {
        writeln!(
            out,
            "  \"{}\" -> \"{}\" [dir=none, label=\"{}\"];",
            e.u, e.v, e.multiplicity
        )
        .unwrap();
    }
    for e in graph.edges() {
        if let Some(arc) = e.arc {
            let to = e.other(&arc.from).expect("arc starts at an endpoint");
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [style=dashed, label=\"{}\"];",
                arc.from, to, arc.label
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}
