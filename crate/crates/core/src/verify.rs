//! Invariant suite over every genus up to a bound.
//!
//! Each check yields one [`CheckOutcome`]. Surface-type enumeration grows
//! roughly fourfold per genus, so it is only run up to
//! [`VerifyOptions::surface_type_limit`].

use std::collections::BTreeSet;

use crate::atlas::{
    class_count, class_count_split, classes_for_genus, i_max, max_i_classes,
    max_i_residue_table, surface_types, total_class_count,
};
use crate::divisor::{mutual_incidence_check, Genus, PointLabel};
use crate::graphs::{
    branch_number_at, canonical_class, exceptional_graph, fiber_divisor, standard_graph, validate,
    weierstrass_graph, SpinGraph,
};
use crate::partitions::{count_partitions, enumerate_partitions, total_partitions};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub max_genus: u32,
    pub surface_type_limit: u32,
    /// Corrupts one exceptional graph before validation. Used to check that
    /// the suite actually reports failures.
    pub inject_fault: bool,
}

impl VerifyOptions {
    pub fn new(max_genus: u32) -> Self {
        Self {
            max_genus,
            surface_type_limit: 9,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }
}

struct Collector {
    name: &'static str,
    failures: Vec<String>,
}

impl Collector {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        // Cap the report; one failure per check is usually enough to act on.
        if !ok && self.failures.len() < 20 {
            self.failures.push(msg());
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name,
            failures: self.failures,
        }
    }
}

fn genera(max_genus: u32) -> impl Iterator<Item = Genus> {
    (2..=max_genus).map(|g| Genus::new(g).expect("g >= 2"))
}

pub fn run(options: &VerifyOptions) -> VerifyReport {
    let mut report = VerifyReport::default();
    let max = options.max_genus;

    let mut c = Collector::new("partition recurrence matches enumeration");
    for m in 0..=max + 1 {
        for k in 1..=m.max(1) {
            let listed = enumerate_partitions(m, k, 1).expect("k >= 1").len() as u64;
            c.check(count_partitions(m, k, 1) == Ok(listed), || format!("m={m} k={k}"));
        }
    }
    report.checks.push(c.finish());

    let mut c = Collector::new("class counts: M(g) = p(g+1) - 1 and N(r) identities");
    for genus in genera(max) {
        let g = genus.get();
        let classes = classes_for_genus(genus);
        let m = total_class_count(genus);
        c.check(m == total_partitions(g + 1) - 1, || format!("g={g}: M={m}"));
        c.check(classes.len() as u64 == m, || format!("g={g}: listed {}", classes.len()));
        for r in 0..g {
            let n = class_count(genus, r).expect("r < g");
            let listed = classes.iter().filter(|x| x.order() == r).count() as u64;
            c.check(n == listed, || format!("g={g} r={r}: N={n} listed={listed}"));
            if r >= 1 {
                let (a, b) = class_count_split(genus, r).expect("1 <= r < g");
                c.check(a + b == n, || format!("g={g} r={r}: {a}+{b} != {n}"));
            }
        }
    }
    report.checks.push(c.finish());

    let mut c = Collector::new("class invariants: branch numbers, i_max, r=1 parity");
    for genus in genera(max) {
        let g = genus.get();
        for class in classes_for_genus(genus) {
            let r = class.order();
            c.check(class.branch_number() == class.branch_number_from_parts(), || {
                format!("g={g} {class}: branch numbers disagree")
            });
            let im = i_max(genus, r).expect("r < g");
            c.check(class.i() <= im, || format!("g={g} {class}: i above i_max"));
            if r == 1 {
                let p1 = class.p()[0];
                let ok = if g % 2 == 1 {
                    p1 % 2 == 0 && (class.i() == im) == (p1 == 0)
                } else {
                    p1 % 2 == 1 && (class.i() != im || p1 == 1)
                };
                c.check(ok, || format!("g={g} {class}: p1 parity"));
            }
        }
        for r in [2u32, 3] {
            let Some(rows) = max_i_residue_table(genus, r) else {
                continue;
            };
            let found: BTreeSet<Vec<u32>> = max_i_classes(genus, r)
                .expect("r < g")
                .iter()
                .map(|x| x.p())
                .collect();
            for row in &rows {
                c.check(found.contains(row), || format!("g={g} r={r}: missing p={row:?}"));
            }
            let extra: Vec<_> = found.iter().filter(|p| !rows.contains(p)).collect();
            if !extra.is_empty() {
                report.notes.push(format!(
                    "g={g} r={r}: i_max classes beyond the published residue row: {extra:?}"
                ));
            }
        }
    }
    report.checks.push(c.finish());

    let mut c = Collector::new("graph validation, witness independence, canonical classes");
    let mut injected = !options.inject_fault;
    for genus in genera(max) {
        let g = genus.get();
        for graph in [standard_graph(genus), weierstrass_graph(genus)] {
            check_graph(&mut c, &graph, 0);
        }
        let standard = standard_graph(genus);
        check_crown(&mut c, &standard);
        for class in classes_for_genus(genus) {
            let mut graph = exceptional_graph(&class);
            if !injected {
                let bumped = graph
                    .divisor(&PointLabel::base())
                    .expect("base vertex")
                    .with_mult(PointLabel::base().conjugate(), g + 7);
                graph = graph.with_divisor(PointLabel::base(), bumped);
                injected = true;
            }
            check_graph(&mut c, &graph, class.branch_number());
            c.check(canonical_class(&graph).as_ref() == Ok(&class), || {
                format!("g={g} {class}: canonical class differs")
            });
        }
    }
    report.checks.push(c.finish());

    let mut c = Collector::new("surface types satisfy the branch budget");
    let limit = max.min(options.surface_type_limit);
    for genus in genera(limit) {
        let budget = 4 * u64::from(genus.get());
        let mut previous: Option<Vec<u32>> = None;
        for t in surface_types(genus) {
            c.check(t.branch_total() == budget, || format!("g={genus}: {t}"));
            if let Some(prev) = &previous {
                c.check(prev.as_slice() < t.counts(), || format!("g={genus}: order at {t}"));
            }
            previous = Some(t.counts().to_vec());
        }
    }
    if max > limit {
        report.notes.push(format!(
            "surface types checked for g <= {limit} only (raise the limit explicitly for more)"
        ));
    }
    report.checks.push(c.finish());

    report
}

fn check_graph(c: &mut Collector, graph: &SpinGraph, branch: u32) {
    let name = format!("g={} {} {:?}", graph.genus(), graph.kind().name(), graph.class().map(|x| x.to_string()));
    let violations = validate(graph);
    c.check(violations.is_empty(), || {
        let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
        format!("{name}: {}", list.join("; "))
    });
    c.check(mutual_incidence_check(graph.vertex_divisors()), || format!("{name}: incidence"));
    for v in graph.labels() {
        let b = branch_number_at(graph, &v);
        c.check(b == Ok(branch), || format!("{name}: branch number at {v} is {b:?}"));
        c.check(fiber_divisor(graph, &v).is_ok(), || format!("{name}: no fiber at {v}"));
    }
}

fn check_crown(c: &mut Collector, graph: &SpinGraph) {
    let g = graph.genus().get() as usize;
    let Some((left, right)) = graph.bipartition() else {
        c.check(false, || format!("standard g={g}: not bipartite"));
        return;
    };
    c.check(left.len() == g + 1 && right.len() == g + 1, || {
        format!("standard g={g}: sides {}+{}", left.len(), right.len())
    });
    for v in graph.labels() {
        c.check(graph.neighbors(&v).len() == g, || format!("standard g={g}: degree at {v}"));
        c.check(graph.edge_between(&v, &v.conjugate()).is_none(), || {
            format!("standard g={g}: {v} adjacent to its conjugate")
        });
        c.check(left.contains(&v) != left.contains(&v.conjugate()), || {
            format!("standard g={g}: {v} and conjugate on one side")
        });
    }
}
