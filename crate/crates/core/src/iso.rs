//! Isomorphism of small decorated multigraphs by exhaustive backtracking.
//!
//! Labels are forgotten: a graph is a vertex count plus, for every ordered
//! pair, the straight-edge multiplicity and the label of the arc running
//! from the first vertex to the second. Two graphs are isomorphic when some
//! bijection preserves both. Intended for at most a dozen or so vertices.

use crate::graphs::SpinGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decorated {
    n: usize,
    /// Symmetric straight-edge multiplicities, row-major.
    mult: Vec<u32>,
    /// `arc[u * n + v]` is the label of the arc from `u` to `v`, or 0.
    arc: Vec<u32>,
}

impl Decorated {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            mult: vec![0; n * n],
            arc: vec![0; n * n],
        }
    }

    /// Simple graph with unit multiplicities.
    pub fn simple(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut out = Self::empty(n);
        for &(u, v) in edges {
            out.add_edge(u, v, 1);
        }
        out
    }

    pub fn add_edge(&mut self, u: usize, v: usize, mult: u32) {
        self.mult[u * self.n + v] = mult;
        self.mult[v * self.n + u] = mult;
    }

    pub fn add_arc(&mut self, from: usize, to: usize, label: u32) {
        self.arc[from * self.n + to] = label;
    }

    pub fn from_graph(graph: &SpinGraph) -> Self {
        let labels: Vec<_> = graph.labels().collect();
        let index = |l| labels.iter().position(|x| *x == l).expect("edge endpoint is a vertex");
        let mut out = Self::empty(labels.len());
        for e in graph.edges() {
            let (u, v) = (index(e.u), index(e.v));
            out.add_edge(u, v, e.multiplicity);
            if let Some(arc) = e.arc {
                let from = index(arc.from);
                let to = if from == u { v } else { u };
                out.add_arc(from, to, arc.label);
            }
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    fn pair(&self, u: usize, v: usize) -> (u32, u32, u32) {
        (
            self.mult[u * self.n + v],
            self.arc[u * self.n + v],
            self.arc[v * self.n + u],
        )
    }

    /// Sorted multiset of incident decorations, invariant under relabelling.
    fn vertex_signature(&self, u: usize) -> Vec<(u32, u32, u32)> {
        let mut sig: Vec<_> = (0..self.n)
            .filter(|&v| v != u)
            .map(|v| self.pair(u, v))
            .filter(|&t| t != (0, 0, 0))
            .collect();
        sig.sort_unstable();
        sig
    }

    /// Sorted vertex signatures. Equal for isomorphic graphs; the converse
    /// does not hold in general.
    pub fn signature(&self) -> Vec<Vec<(u32, u32, u32)>> {
        let mut all: Vec<_> = (0..self.n).map(|u| self.vertex_signature(u)).collect();
        all.sort();
        all
    }
}

/// A bijection `map[u] = v` from `a` onto `b` preserving all decorations.
pub fn find_isomorphism(a: &Decorated, b: &Decorated) -> Option<Vec<usize>> {
    if a.n != b.n {
        return None;
    }
    let sig_a: Vec<_> = (0..a.n).map(|u| a.vertex_signature(u)).collect();
    let sig_b: Vec<_> = (0..b.n).map(|u| b.vertex_signature(u)).collect();
    {
        let (mut sa, mut sb) = (sig_a.clone(), sig_b.clone());
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
    }
    let mut map = vec![usize::MAX; a.n];
    let mut used = vec![false; b.n];
    if extend(a, b, &sig_a, &sig_b, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(
    a: &Decorated,
    b: &Decorated,
    sig_a: &[Vec<(u32, u32, u32)>],
    sig_b: &[Vec<(u32, u32, u32)>],
    u: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if u == a.n {
        return true;
    }
    for v in 0..b.n {
        if used[v] || sig_a[u] != sig_b[v] {
            continue;
        }
        let consistent = (0..u).all(|w| a.pair(u, w) == b.pair(v, map[w]));
        if !consistent {
            continue;
        }
        map[u] = v;
        used[v] = true;
        if extend(a, b, sig_a, sig_b, u + 1, map, used) {
            return true;
        }
        used[v] = false;
    }
    map[u] = usize::MAX;
    false
}

pub fn is_isomorphic(a: &Decorated, b: &Decorated) -> bool {
    find_isomorphism(a, b).is_some()
}

pub fn graphs_isomorphic(a: &SpinGraph, b: &SpinGraph) -> bool {
    is_isomorphic(&Decorated::from_graph(a), &Decorated::from_graph(b))
}
