//! Spin graphs as decorated multigraphs.
//!
//! Each vertex `Q` carries its divisor `A_Q`. Two vertices `Q`, `R` are
//! joined when each appears in the other's divisor. If `Q` occurs in `A_R`
//! with exponent `n1` and `R` occurs in `A_Q` with exponent `n2 >= n1`, the
//! straight edge has multiplicity `n1` and, when `n2 > n1`, an oriented arc
//! runs from `R` to `Q` labelled `n2 - n1`.
//!
//! Three kinds of leaves are built here:
//!
//! - standard: `A_P = P1...Pg`, `A_Pk = P * prod_{l != k} P~l`, and
//!   conjugates. The result is the crown graph on `2g + 2` vertices.
//! - Weierstrass: `g + 1` self-conjugate points, each divisor the product
//!   of all the others.
//! - exceptional, for a class `khat = (k0, ..., kr)`:
//!   `A_P = P~^(k0-1) * prod Pj^kj` and
//!   `A_Pj = P^k0 * P~j^(kj-1) * prod_{l != j} P~l^kl`, plus conjugates.
//!
//! The fiber divisor of a vertex is `AA_V = V * A_{V~}`. Every vertex of a
//! leaf has `AA_V` equal to `AA_P` or `AA_{P~}`, and the exponent of `V` in
//! its own fiber divisor is written `k0(V)`; vertices minimising it are the
//! heads.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::atlas::ExceptionalClass;
use crate::divisor::{mutual_incidence_check, Divisor, Genus, PointLabel};
use crate::error::{Error, Result};
use crate::partitions::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Standard,
    Weierstrass,
    Exceptional(ExceptionalClass),
}

impl GraphKind {
    pub fn name(&self) -> &'static str {
        match self {
            GraphKind::Standard => "standard",
            GraphKind::Weierstrass => "weierstrass",
            GraphKind::Exceptional(_) => "exceptional",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientedArc {
    pub from: PointLabel,
    pub label: u32,
}

/// Straight edge between `u < v` with an optional arc decoration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: PointLabel,
    pub v: PointLabel,
    pub multiplicity: u32,
    pub arc: Option<OrientedArc>,
}

impl Edge {
    pub fn other(&self, x: &PointLabel) -> Option<PointLabel> {
        if *x == self.u {
            Some(self.v)
        } else if *x == self.v {
            Some(self.u)
        } else {
            None
        }
    }

    /// Exponent of `neighbor` in the divisor of `vertex`, recovered from the
    /// decorations.
    pub fn exponent_seen_from(&self, vertex: &PointLabel) -> Option<u32> {
        let neighbor = self.other(vertex)?;
        let extra = match self.arc {
            Some(arc) if arc.from == neighbor => arc.label,
            _ => 0,
        };
        Some(self.multiplicity + extra)
    }
}

/// Derives the edge list from a family of vertex divisors.
///
/// Fails on the first pair where exactly one of the two vertices sees the
/// other, or when a divisor mentions a point that is not a vertex.
pub fn edges_from_divisors(vertex_divisors: &BTreeMap<PointLabel, Divisor>) -> Result<Vec<Edge>> {
    for (q, a_q) in vertex_divisors {
        for (r, _) in a_q.iter() {
            if !vertex_divisors.contains_key(&r) {
                return Err(Error::AsymmetricIncidence(*q, r));
            }
        }
    }
    let labels: Vec<&PointLabel> = vertex_divisors.keys().collect();
    let mut edges = Vec::new();
    for (a, u) in labels.iter().enumerate() {
        for v in &labels[a + 1..] {
            let v_in_u = vertex_divisors[*u].mult(v);
            let u_in_v = vertex_divisors[*v].mult(u);
            match (v_in_u, u_in_v) {
                (0, 0) => continue,
                (0, _) | (_, 0) => return Err(Error::AsymmetricIncidence(**u, **v)),
                _ => {}
            }
            let arc = match v_in_u.cmp(&u_in_v) {
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(OrientedArc {
                    from: **v,
                    label: v_in_u - u_in_v,
                }),
                std::cmp::Ordering::Less => Some(OrientedArc {
                    from: **u,
                    label: u_in_v - v_in_u,
                }),
            };
            edges.push(Edge {
                u: **u,
                v: **v,
                multiplicity: v_in_u.min(u_in_v),
                arc,
            });
        }
    }
    Ok(edges)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinGraph {
    genus: Genus,
    kind: GraphKind,
    vertices: BTreeMap<PointLabel, Divisor>,
    edges: Vec<Edge>,
}

/// Divisors of the `2(r + 1)` vertices for `khat = (k0, ..., kr)`.
fn paired_divisors(khat: &[u32]) -> BTreeMap<PointLabel, Divisor> {
    let base = PointLabel::base();
    let k0 = khat[0];
    let rest = &khat[1..];
    let mut out = BTreeMap::new();

    let head: Divisor = std::iter::once((base.conjugate(), k0 - 1))
        .chain(
            rest.iter()
                .enumerate()
                .map(|(n, &k)| (PointLabel::indexed(n as u32 + 1), k)),
        )
        .collect();
    out.insert(base.conjugate(), head.conjugate());
    out.insert(base, head);

    for (jn, &kj) in rest.iter().enumerate() {
        let pj = PointLabel::indexed(jn as u32 + 1);
        let a: Divisor = std::iter::once((base, k0))
            .chain(std::iter::once((pj.conjugate(), kj - 1)))
            .chain(rest.iter().enumerate().filter(|(ln, _)| *ln != jn).map(
                |(ln, &kl)| (PointLabel::indexed(ln as u32 + 1).conjugate(), kl),
            ))
            .collect();
        out.insert(pj.conjugate(), a.conjugate());
        out.insert(pj, a);
    }
    out
}

impl SpinGraph {
    /// Builds a graph from divisors, deriving the edges.
    pub fn from_divisors(
        genus: Genus,
        kind: GraphKind,
        vertices: BTreeMap<PointLabel, Divisor>,
    ) -> Result<Self> {
        let edges = edges_from_divisors(&vertices)?;
        Ok(Self {
            genus,
            kind,
            vertices,
            edges,
        })
    }

    /// No checks at all; pair with [`validate`]. Intended for tests and
    /// fault injection.
    pub fn from_raw(
        genus: Genus,
        kind: GraphKind,
        vertices: BTreeMap<PointLabel, Divisor>,
        edges: Vec<Edge>,
    ) -> Self {
        Self {
            genus,
            kind,
            vertices,
            edges,
        }
    }

    /// Copy with one vertex divisor replaced; the edge list is kept as is.
    #[must_use]
    pub fn with_divisor(&self, vertex: PointLabel, divisor: Divisor) -> Self {
        let mut out = self.clone();
        out.vertices.insert(vertex, divisor);
        out
    }

    /// Copy with one vertex and its incident edges removed.
    #[must_use]
    pub fn without_vertex(&self, vertex: &PointLabel) -> Self {
        let mut out = self.clone();
        out.vertices.remove(vertex);
        out.edges.retain(|e| e.u != *vertex && e.v != *vertex);
        out
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn kind(&self) -> &GraphKind {
        &self.kind
    }

    pub fn class(&self) -> Option<&ExceptionalClass> {
        match &self.kind {
            GraphKind::Exceptional(c) => Some(c),
            _ => None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn labels(&self) -> impl Iterator<Item = PointLabel> + '_ {
        self.vertices.keys().copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (PointLabel, &Divisor)> + '_ {
        self.vertices.iter().map(|(l, d)| (*l, d))
    }

    pub fn vertex_divisors(&self) -> &BTreeMap<PointLabel, Divisor> {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, vertex: &PointLabel) -> bool {
        self.vertices.contains_key(vertex)
    }

    pub fn divisor(&self, vertex: &PointLabel) -> Result<&Divisor> {
        self.vertices
            .get(vertex)
            .ok_or(Error::UnknownVertex(*vertex))
    }

    pub fn edge_between(&self, a: &PointLabel, b: &PointLabel) -> Option<&Edge> {
        let (u, v) = if a <= b { (a, b) } else { (b, a) };
        self.edges.iter().find(|e| e.u == *u && e.v == *v)
    }

    pub fn neighbors(&self, vertex: &PointLabel) -> Vec<PointLabel> {
        self.edges.iter().filter_map(|e| e.other(vertex)).collect()
    }

    /// Two-colouring of the underlying simple graph, if one exists.
    pub fn bipartition(&self) -> Option<(BTreeSet<PointLabel>, BTreeSet<PointLabel>)> {
        let mut colour: BTreeMap<PointLabel, bool> = BTreeMap::new();
        for start in self.labels() {
            if colour.contains_key(&start) {
                continue;
            }
            colour.insert(start, false);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                let cx = colour[&x];
                for y in self.neighbors(&x) {
                    match colour.get(&y) {
                        Some(&cy) if cy == cx => return None,
                        Some(_) => {}
                        None => {
                            colour.insert(y, !cx);
                            stack.push(y);
                        }
                    }
                }
            }
        }
        let (left, right): (Vec<_>, Vec<_>) = colour.into_iter().partition(|(_, c)| !*c);
        Some((
            left.into_iter().map(|(l, _)| l).collect(),
            right.into_iter().map(|(l, _)| l).collect(),
        ))
    }
}

/// Generic leaf through a standard point.
pub fn standard_graph(genus: Genus) -> SpinGraph {
    let g = genus.get();
    let base = PointLabel::base();
    let mut vertices = BTreeMap::new();
    let a_p: Divisor = (1..=g).map(|k| (PointLabel::indexed(k), 1)).collect();
    vertices.insert(base.conjugate(), a_p.conjugate());
    vertices.insert(base, a_p);
    for k in 1..=g {
        let pk = PointLabel::indexed(k);
        let a: Divisor = std::iter::once((base, 1))
            .chain(
                (1..=g)
                    .filter(|&l| l != k)
                    .map(|l| (PointLabel::indexed(l).conjugate(), 1)),
            )
            .collect();
        vertices.insert(pk.conjugate(), a.conjugate());
        vertices.insert(pk, a);
    }
    SpinGraph::from_divisors(genus, GraphKind::Standard, vertices)
        .expect("standard divisors are mutually incident")
}

/// Leaf through the Weierstrass points: `K_{g+1}` on `W0..Wg`.
pub fn weierstrass_graph(genus: Genus) -> SpinGraph {
    let g = genus.get();
    let vertices: BTreeMap<PointLabel, Divisor> = (0..=g)
        .map(|j| {
            let a = (0..=g)
                .filter(|&l| l != j)
                .map(|l| (PointLabel::weierstrass(l), 1))
                .collect();
            (PointLabel::weierstrass(j), a)
        })
        .collect();
    SpinGraph::from_divisors(genus, GraphKind::Weierstrass, vertices)
        .expect("weierstrass divisors are mutually incident")
}

/// Exceptional leaf whose head `P` has class `class`.
pub fn exceptional_graph(class: &ExceptionalClass) -> SpinGraph {
    let vertices = paired_divisors(class.khat().parts());
    SpinGraph::from_divisors(class.genus(), GraphKind::Exceptional(class.clone()), vertices)
        .expect("exceptional divisors are mutually incident")
}

/// Validates `khat` against `genus` and builds the graph.
pub fn exceptional_graph_from_khat(genus: Genus, khat: &[u32]) -> Result<SpinGraph> {
    Ok(exceptional_graph(&ExceptionalClass::from_parts(genus, khat)?))
}

/// `(Q, A_Q)`, standing for the section divisor `Q^-1 A_Q`.
pub fn section_divisor(graph: &SpinGraph, vertex: &PointLabel) -> Result<(PointLabel, Divisor)> {
    Ok((*vertex, graph.divisor(vertex)?.clone()))
}

pub fn epsilon_degree_of_vertex(graph: &SpinGraph, vertex: &PointLabel) -> Result<usize> {
    Ok(graph.divisor(vertex)?.support_len())
}

/// `AA_V = V * A_{V~}`.
pub fn fiber_divisor(graph: &SpinGraph, vertex: &PointLabel) -> Result<Divisor> {
    graph.divisor(vertex)?;
    let conj = graph.divisor(&vertex.conjugate())?;
    Ok(&Divisor::monomial(*vertex, 1) * conj)
}

/// `k0(V)`: exponent of `V` in its own fiber divisor.
pub fn self_exponent(graph: &SpinGraph, vertex: &PointLabel) -> Result<u32> {
    Ok(fiber_divisor(graph, vertex)?.mult(vertex))
}

/// `2 * sum (mult - 1)` over `AA_V` for the given witness vertex.
pub fn branch_number_at(graph: &SpinGraph, vertex: &PointLabel) -> Result<u32> {
    let fiber = fiber_divisor(graph, vertex)?;
    Ok(2 * fiber.iter().map(|(_, m)| m - 1).sum::<u32>())
}

/// Branch number read at the first vertex. Every vertex gives the same
/// value on a valid graph.
pub fn graph_branch_number(graph: &SpinGraph) -> u32 {
    graph
        .labels()
        .next()
        .and_then(|v| branch_number_at(graph, &v).ok())
        .unwrap_or(0)
}

/// Vertices minimising `k0(V)`.
pub fn head_vertices(graph: &SpinGraph) -> Result<Vec<PointLabel>> {
    if graph.class().is_none() {
        return Err(Error::NotExceptional);
    }
    let exps: Vec<(PointLabel, u32)> = graph
        .labels()
        .map(|v| self_exponent(graph, &v).map(|e| (v, e)))
        .collect::<Result<_>>()?;
    let min = exps.iter().map(|(_, e)| *e).min().unwrap_or(0);
    Ok(exps
        .into_iter()
        .filter(|(_, e)| *e == min)
        .map(|(v, _)| v)
        .collect())
}

/// `khat(V)`: `k0(V)` followed by the remaining exponents of `AA_V` in
/// ascending order. At a head this is already sorted.
pub fn khat_at(graph: &SpinGraph, vertex: &PointLabel) -> Result<Vec<u32>> {
    let fiber = fiber_divisor(graph, vertex)?;
    let mut rest: Vec<u32> = fiber
        .iter()
        .filter(|(p, _)| p != vertex)
        .map(|(_, m)| m)
        .collect();
    rest.sort_unstable();
    let mut out = vec![fiber.mult(vertex)];
    out.extend(rest);
    Ok(out)
}

/// Class read off at a head, recomputed from the divisors alone.
pub fn canonical_class(graph: &SpinGraph) -> Result<ExceptionalClass> {
    let heads = head_vertices(graph)?;
    let head = heads.first().ok_or(Error::NotExceptional)?;
    let khat = khat_at(graph, head)?;
    let genus = graph.genus();
    let partition = Partition::new(khat).map_err(|_| Error::InvalidClass {
        genus: genus.get(),
        reason: format!("zero exponent at head {head}"),
    })?;
    ExceptionalClass::new(genus, partition)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DivisorDegree { vertex: PointLabel, degree: u64 },
    SelfIncidence { vertex: PointLabel },
    MissingConjugate { vertex: PointLabel },
    ForeignPoint { vertex: PointLabel, point: PointLabel },
    AsymmetricIncidence,
    EdgesDisagree,
    VertexCount { expected: usize, actual: usize },
    FiberMismatch { vertex: PointLabel },
    HeadMismatch { vertex: PointLabel, khat: Vec<u32> },
    LabelKind { vertex: PointLabel },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DivisorDegree { vertex, degree } => {
                write!(f, "divisor of {vertex} has degree {degree}")
            }
            Violation::SelfIncidence { vertex } => write!(f, "{vertex} occurs in its own divisor"),
            Violation::MissingConjugate { vertex } => {
                write!(f, "conjugate of {vertex} is not a vertex")
            }
            Violation::ForeignPoint { vertex, point } => {
                write!(f, "divisor of {vertex} mentions non-vertex {point}")
            }
            Violation::AsymmetricIncidence => write!(f, "incidence is not mutual"),
            Violation::EdgesDisagree => write!(f, "stored edges differ from the divisor-derived edges"),
            Violation::VertexCount { expected, actual } => {
                write!(f, "expected {expected} vertices, found {actual}")
            }
            Violation::FiberMismatch { vertex } => {
                write!(f, "fiber divisor of {vertex} is neither AA_P nor AA_P~")
            }
            Violation::HeadMismatch { vertex, khat } => {
                write!(f, "head {vertex} reads khat {khat:?}, not the graph's class")
            }
            Violation::LabelKind { vertex } => {
                write!(f, "label {vertex} does not belong to this kind of graph")
            }
        }
    }
}

/// Structural checks; an empty list means the graph is consistent.
pub fn validate(graph: &SpinGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    let g = u64::from(graph.genus().get());
    let weierstrass = matches!(graph.kind(), GraphKind::Weierstrass);

    let expected_count = match graph.kind() {
        GraphKind::Standard => 2 * g as usize + 2,
        GraphKind::Weierstrass => g as usize + 1,
        GraphKind::Exceptional(c) => c.vertex_count(),
    };
    if graph.vertex_count() != expected_count {
        out.push(Violation::VertexCount {
            expected: expected_count,
            actual: graph.vertex_count(),
        });
    }

    for (v, a) in graph.vertices() {
        if v.is_weierstrass() != weierstrass {
            out.push(Violation::LabelKind { vertex: v });
        }
        if a.degree() != g {
            out.push(Violation::DivisorDegree {
                vertex: v,
                degree: a.degree(),
            });
        }
        if a.contains(&v) {
            out.push(Violation::SelfIncidence { vertex: v });
        }
        if !graph.contains(&v.conjugate()) {
            out.push(Violation::MissingConjugate { vertex: v });
        }
        for (p, _) in a.iter() {
            if !graph.contains(&p) {
                out.push(Violation::ForeignPoint { vertex: v, point: p });
            }
        }
    }

    if !mutual_incidence_check(graph.vertex_divisors()) {
        out.push(Violation::AsymmetricIncidence);
    }
    match edges_from_divisors(graph.vertex_divisors()) {
        Ok(edges) if edges == graph.edges() => {}
        _ => out.push(Violation::EdgesDisagree),
    }

    // Remaining checks read fiber divisors and need conjugates present.
    if out
        .iter()
        .any(|v| matches!(v, Violation::MissingConjugate { .. }))
    {
        return out;
    }

    let base = match graph.kind() {
        GraphKind::Weierstrass => PointLabel::weierstrass(0),
        _ => PointLabel::base(),
    };
    if let (Ok(f_p), Ok(f_pc)) = (
        fiber_divisor(graph, &base),
        fiber_divisor(graph, &base.conjugate()),
    ) {
        for v in graph.labels() {
            let f_v = fiber_divisor(graph, &v).expect("conjugate present");
            let ok = if weierstrass {
                // AA_W is W * A_W: the product of all Weierstrass points.
                f_v.iter().all(|(_, m)| m == 1) && f_v.support_len() == graph.vertex_count()
            } else {
                f_v == f_p || f_v == f_pc
            };
            if !ok {
                out.push(Violation::FiberMismatch { vertex: v });
            }
        }
    }

    if let GraphKind::Exceptional(class) = graph.kind() {
        if let Ok(heads) = head_vertices(graph) {
            for h in heads {
                match khat_at(graph, &h) {
                    Ok(khat) if khat.as_slice() == class.khat().parts() => {}
                    Ok(khat) => out.push(Violation::HeadMismatch { vertex: h, khat }),
                    Err(_) => {}
                }
            }
        }
    }
    out
}
