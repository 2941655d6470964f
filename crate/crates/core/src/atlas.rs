//! Classification of exceptional graphs and of surface types.
//!
//! An exceptional class of genus `g` is an ascending partition
//! `khat = (k0, k1, ..., kr)` of `g + 1` into `r + 1 <= g` parts. The
//! equivalent `(i, p1, ..., pr)` coordinates are `i = k0 - 1` and
//! `pn = kn - k(n-1)`. A surface type counts how many exceptional graphs of
//! each class a surface carries; the counts must use up the total branch
//! number `4g` exactly, with each graph of order `r` contributing
//! `2(g - r)`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::divisor::Genus;
use crate::error::{Error, Result};
use crate::partitions::{count_partitions, partitions, Partition};

pub const DEFAULT_GENUS_CEILING: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExceptionalClass {
    genus: Genus,
    khat: Partition,
}

impl ExceptionalClass {
    pub fn new(genus: Genus, khat: Partition) -> Result<Self> {
        let g = genus.get();
        let invalid = |reason: String| Error::InvalidClass { genus: g, reason };
        if khat.is_empty() {
            return Err(invalid("khat is empty".into()));
        }
        if khat.sum() != u64::from(g) + 1 {
            return Err(invalid(format!("parts of {khat} sum to {}, not g+1 = {}", khat.sum(), g + 1)));
        }
        if khat.len() > g as usize {
            return Err(invalid(format!("{khat} has {} parts, at most g = {g} allowed", khat.len())));
        }
        Ok(Self { genus, khat })
    }

    /// Sorts the parts before validating.
    pub fn from_parts(genus: Genus, parts: &[u32]) -> Result<Self> {
        let khat = Partition::new(parts.to_vec()).map_err(|_| Error::InvalidClass {
            genus: genus.get(),
            reason: "parts must be positive".into(),
        })?;
        Self::new(genus, khat)
    }

    /// Builds `khat` from `k0 = 1 + i` and `kn = k(n-1) + pn`.
    pub fn from_ip(genus: Genus, i: u32, p: &[u32]) -> Result<Self> {
        let mut parts = Vec::with_capacity(p.len() + 1);
        let mut k = 1 + i;
        parts.push(k);
        for &step in p {
            k += step;
            parts.push(k);
        }
        Self::new(genus, Partition::from_sorted(parts))
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn khat(&self) -> &Partition {
        &self.khat
    }

    pub fn order(&self) -> u32 {
        (self.khat.len() - 1) as u32
    }

    pub fn i(&self) -> u32 {
        self.khat.parts()[0] - 1
    }

    pub fn p(&self) -> Vec<u32> {
        self.khat.parts().windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// `2(g - r)`.
    pub fn branch_number(&self) -> u32 {
        2 * (self.genus.get() - self.order())
    }

    /// `2 * sum(k_n - 1)`, which must agree with [`Self::branch_number`].
    pub fn branch_number_from_parts(&self) -> u32 {
        2 * self.khat.parts().iter().map(|k| k - 1).sum::<u32>()
    }

    /// Size of the leaf, `2(r + 1)`.
    pub fn vertex_count(&self) -> usize {
        2 * self.khat.len()
    }

    /// `S_{i,p1,...,pr}`.
    pub fn ip_label(&self) -> String {
        let mut s = format!("S_{{{}", self.i());
        for p in self.p() {
            s.push_str(&format!(",{p}"));
        }
        s.push('}');
        s
    }
}

impl fmt::Display for ExceptionalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.khat)
    }
}

fn order_bound(g: u32, r: u32) -> Result<()> {
    if r > g - 1 {
        return Err(Error::OrderOutOfRange {
            genus: g,
            order: r,
            max: g - 1,
        });
    }
    Ok(())
}

/// `floor((g - r) / (r + 1))`.
pub fn i_max(genus: Genus, r: u32) -> Result<u32> {
    let g = genus.get();
    order_bound(g, r)?;
    Ok((g - r) / (r + 1))
}

/// Classes of order `r`, lexicographic in `khat`.
pub fn classes_of_order(genus: Genus, r: u32) -> Result<Vec<ExceptionalClass>> {
    let g = genus.get();
    order_bound(g, r)?;
    Ok(partitions(g + 1, r + 1, 1)?
        .map(|khat| ExceptionalClass { genus, khat })
        .collect())
}

/// Every exceptional class, ordered by `r` ascending then `khat`
/// lexicographically. The position within an order is the `s` of `S^r_s`
/// (starting from 1).
pub fn classes_for_genus(genus: Genus) -> Vec<ExceptionalClass> {
    (0..genus.get())
        .flat_map(|r| classes_of_order(genus, r).expect("r < g"))
        .collect()
}

/// Classes of order `r` attaining `i = i_max(g, r)`, found by filtering
/// the full list of that order.
pub fn max_i_classes(genus: Genus, r: u32) -> Result<Vec<ExceptionalClass>> {
    let im = i_max(genus, r)?;
    Ok(classes_of_order(genus, r)?
        .into_iter()
        .filter(|c| c.i() == im)
        .collect())
}

/// Closed-form `(p1, ..., pr)` lists at `i = i_max` for orders 2 and 3,
/// keyed by the residue of `g` modulo `r + 1`, as they appear in the
/// published case analysis. `None` for other orders or when `r >= g`.
///
/// The `r = 3`, `g = 2 (mod 4)` row lists `(1,0,0)` and `(0,0,3)` only;
/// `(0,1,1)` is also admissible (`3p1 + 2p2 + p3 = 3`) and is reported by
/// [`max_i_classes`]. [`max_i_residue_table`] keeps the published rows
/// verbatim so the discrepancy stays visible.
pub fn max_i_residue_table(genus: Genus, r: u32) -> Option<Vec<Vec<u32>>> {
    let g = genus.get();
    if r >= g {
        return None;
    }
    let rows: Vec<Vec<u32>> = match (r, g % (r + 1)) {
        (2, 0) => vec![vec![0, 1]],
        (2, 1) => vec![vec![0, 2], vec![1, 0]],
        (2, 2) => vec![vec![0, 0]],
        (3, 3) => vec![vec![0, 0, 0]],
        (3, 2) => vec![vec![1, 0, 0], vec![0, 0, 3]],
        (3, 1) => vec![vec![0, 1, 0], vec![0, 0, 2]],
        (3, 0) => vec![vec![0, 0, 1]],
        _ => return None,
    };
    Some(rows)
}

/// `N(r) = sigma_{r+1}(g+1)`.
pub fn class_count(genus: Genus, r: u32) -> Result<u64> {
    let g = genus.get();
    order_bound(g, r)?;
    count_partitions(g + 1, r + 1, 1)
}

/// The two summands of `N(r)` for `r >= 1`: classes with `i = 0`,
/// `sigma_r(g)`, and classes with `i > 0`, `sigma^2_{r+1}(g+1)`.
pub fn class_count_split(genus: Genus, r: u32) -> Result<(u64, u64)> {
    let g = genus.get();
    order_bound(g, r)?;
    if r == 0 {
        return Err(Error::OrderOutOfRange {
            genus: g,
            order: 0,
            max: g - 1,
        });
    }
    Ok((count_partitions(g, r, 1)?, count_partitions(g + 1, r + 1, 2)?))
}

/// `M(g) = sum_r N(r) = 1 + sum_{m=2}^{g} sigma_m(g+1)`.
pub fn total_class_count(genus: Genus) -> u64 {
    let g = genus.get();
    1 + (2..=g)
        .map(|m| count_partitions(g + 1, m, 1).expect("m >= 1"))
        .sum::<u64>()
}

/// Counts `m_{r,s}` aligned with [`classes_for_genus`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceType {
    classes: Arc<[ExceptionalClass]>,
    counts: Vec<u32>,
}

impl SurfaceType {
    /// Checks the length of `counts` only. Use [`SurfaceType::is_balanced`]
    /// or [`leaf_census`] for the branch budget.
    pub fn new(genus: Genus, counts: Vec<u32>) -> Result<Self> {
        let classes: Arc<[ExceptionalClass]> = classes_for_genus(genus).into();
        Self::with_classes(classes, counts)
    }

    fn with_classes(classes: Arc<[ExceptionalClass]>, counts: Vec<u32>) -> Result<Self> {
        if counts.len() != classes.len() {
            return Err(Error::SurfaceTypeLength {
                genus: classes[0].genus().get(),
                expected: classes.len(),
                actual: counts.len(),
            });
        }
        Ok(Self { classes, counts })
    }

    pub fn genus(&self) -> Genus {
        self.classes[0].genus()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn classes(&self) -> &[ExceptionalClass] {
        &self.classes
    }

    pub fn entries(&self) -> impl Iterator<Item = (&ExceptionalClass, u32)> {
        self.classes.iter().zip(self.counts.iter().copied())
    }

    /// `sum m_{r,s} * 2(g - r)`.
    pub fn branch_total(&self) -> u64 {
        self.entries()
            .map(|(c, m)| u64::from(m) * u64::from(c.branch_number()))
            .sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.branch_total() == 4 * u64::from(self.genus().get())
    }

    /// Membership in the list printed for genus 2 or 3; `None` when no list
    /// was published for this genus.
    pub fn is_published(&self) -> Option<bool> {
        published_surface_types(self.genus())
            .map(|list| list.iter().any(|t| t.as_slice() == self.counts.as_slice()))
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, m) in self.counts.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// Surface types listed in the worked examples for `g = 2` (three) and
/// `g = 3` (nine). The `g = 3` list is not all of the balanced tuples.
pub fn published_surface_types(genus: Genus) -> Option<Vec<Vec<u32>>> {
    match genus.get() {
        2 => Some(vec![vec![2, 0], vec![1, 2], vec![0, 4]]),
        3 => Some(vec![
            vec![2, 0, 0, 0],
            vec![1, 1, 0, 1],
            vec![1, 0, 1, 1],
            vec![0, 1, 2, 0],
            vec![0, 2, 1, 0],
            vec![0, 1, 1, 2],
            vec![0, 1, 0, 4],
            vec![0, 0, 1, 4],
            vec![0, 0, 0, 6],
        ]),
        _ => None,
    }
}

/// Lazy enumeration of every balanced surface type in ascending
/// lexicographic order of the count tuple.
///
/// The last class always has order `g - 1` and weight 1 (in units of 2), so
/// every partial assignment that stays within budget completes uniquely and
/// the search never dead-ends.
#[derive(Debug, Clone)]
pub struct SurfaceTypes {
    classes: Arc<[ExceptionalClass]>,
    /// Branch weight of each class in units of 2, i.e. `g - r`.
    weights: Vec<u64>,
    budget: u64,
    counts: Vec<u32>,
    done: bool,
}

impl SurfaceTypes {
    fn new(genus: Genus) -> Self {
        let classes: Arc<[ExceptionalClass]> = classes_for_genus(genus).into();
        let g = u64::from(genus.get());
        let weights: Vec<u64> = classes.iter().map(|c| g - u64::from(c.order())).collect();
        debug_assert_eq!(*weights.last().unwrap(), 1);
        let budget = 2 * g;
        let mut counts = vec![0; classes.len()];
        *counts.last_mut().unwrap() = budget as u32;
        Self {
            classes,
            weights,
            budget,
            counts,
            done: false,
        }
    }

    fn advance(&mut self) {
        let last = self.counts.len() - 1;
        let mut prefix: u64 = self.counts[..last]
            .iter()
            .zip(&self.weights)
            .map(|(&m, &w)| u64::from(m) * w)
            .sum();
        for j in (0..last).rev() {
            prefix -= u64::from(self.counts[j]) * self.weights[j];
            let bumped = u64::from(self.counts[j]) + 1;
            if prefix + bumped * self.weights[j] <= self.budget {
                self.counts[j] = bumped as u32;
                for slot in &mut self.counts[j + 1..last] {
                    *slot = 0;
                }
                self.counts[last] = (self.budget - prefix - bumped * self.weights[j]) as u32;
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for SurfaceTypes {
    type Item = SurfaceType;

    fn next(&mut self) -> Option<SurfaceType> {
        if self.done {
            return None;
        }
        let out = SurfaceType {
            classes: Arc::clone(&self.classes),
            counts: self.counts.clone(),
        };
        self.advance();
        Some(out)
    }
}

pub fn surface_types(genus: Genus) -> SurfaceTypes {
    SurfaceTypes::new(genus)
}

/// Collects [`surface_types`]. The count grows quickly (about 1.4 million
/// tuples at `g = 12`); prefer the iterator beyond small genus.
pub fn enumerate_surface_types(genus: Genus) -> Vec<SurfaceType> {
    surface_types(genus).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafGroup {
    pub khat: Vec<u32>,
    pub order: u32,
    pub count: u32,
    pub leaf_size: usize,
}

/// Finite leaves of the foliation for one surface type. Generic leaves
/// form an infinite family of standard graphs and are reported by size only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafCensus {
    pub genus: u32,
    pub weierstrass_leaves: u32,
    pub weierstrass_leaf_size: usize,
    pub exceptional: Vec<LeafGroup>,
    pub standard_leaf_size: usize,
    pub branch_total: u64,
}

impl LeafCensus {
    pub fn exceptional_leaf_count(&self) -> u64 {
        self.exceptional.iter().map(|l| u64::from(l.count)).sum()
    }

    /// Sizes of all exceptional leaves, one entry per leaf.
    pub fn exceptional_leaf_sizes(&self) -> Vec<usize> {
        self.exceptional
            .iter()
            .flat_map(|l| std::iter::repeat_n(l.leaf_size, l.count as usize))
            .collect()
    }
}

pub fn leaf_census(surface: &SurfaceType) -> Result<LeafCensus> {
    let g = surface.genus().get();
    let total = surface.branch_total();
    let expected = 4 * u64::from(g);
    if total != expected {
        return Err(Error::BranchBudget { total, expected });
    }
    let exceptional = surface
        .entries()
        .filter(|(_, m)| *m > 0)
        .map(|(c, m)| LeafGroup {
            khat: c.khat().parts().to_vec(),
            order: c.order(),
            count: m,
            leaf_size: c.vertex_count(),
        })
        .collect();
    Ok(LeafCensus {
        genus: g,
        weierstrass_leaves: 2,
        weierstrass_leaf_size: g as usize + 1,
        exceptional,
        standard_leaf_size: 2 * g as usize + 2,
        branch_total: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn genus(g: u32) -> Genus {
        Genus::new(g).unwrap()
    }

    fn khats(list: &[ExceptionalClass]) -> Vec<Vec<u32>> {
        list.iter().map(|c| c.khat().parts().to_vec()).collect()
    }

    #[test]
    fn order_and_branch_numbers() {
        let g3 = genus(3);
        assert_eq!(ExceptionalClass::from_parts(g3, &[4]).unwrap().order(), 0);
        assert_eq!(ExceptionalClass::from_parts(g3, &[1, 1, 2]).unwrap().order(), 2);
        for g in 2..=12 {
            let mut parts = vec![1; g as usize - 1];
            parts.push(2);
            let top = ExceptionalClass::from_parts(genus(g), &parts).unwrap();
            assert_eq!(top.order(), g - 1);
        }

        let b = |g: u32| -> Vec<u32> {
            (0..g)
                .map(|r| classes_of_order(genus(g), r).unwrap()[0].branch_number())
                .collect()
        };
        assert_eq!(b(2), vec![4, 2]);
        assert_eq!(b(3), vec![6, 4, 2]);
        assert_eq!(b(4), vec![8, 6, 4, 2]);
    }

    #[test]
    fn invalid_classes_are_rejected() {
        let g3 = genus(3);
        assert!(ExceptionalClass::from_parts(g3, &[1, 2]).is_err());
        assert!(ExceptionalClass::from_parts(g3, &[1, 1, 1, 1]).is_err());
        assert!(ExceptionalClass::from_parts(g3, &[0, 4]).is_err());
        assert!(ExceptionalClass::from_parts(g3, &[]).is_err());
    }

    #[test]
    fn ip_coordinates_round_trip() {
        for g in 2..=10 {
            for c in classes_for_genus(genus(g)) {
                let back = ExceptionalClass::from_ip(genus(g), c.i(), &c.p()).unwrap();
                assert_eq!(back, c);
                // g = (r+1) i + r p1 + ... + 1 pr + r
                let r = c.order();
                let weighted: u32 = c
                    .p()
                    .iter()
                    .enumerate()
                    .map(|(n, p)| (r - n as u32) * p)
                    .sum();
                assert_eq!((r + 1) * c.i() + weighted + r, g);
            }
        }
    }

    #[test]
    fn i_max_values() {
        assert_eq!(i_max(genus(3), 1).unwrap(), 1);
        assert_eq!(i_max(genus(5), 2).unwrap(), 1);
        assert_eq!(i_max(genus(2), 1).unwrap(), 0);
        assert!(i_max(genus(2), 2).is_err());
    }

    #[test]
    fn max_i_examples() {
        let ip = |list: Vec<ExceptionalClass>| -> Vec<(u32, Vec<u32>)> {
            list.into_iter().map(|c| (c.i(), c.p())).collect()
        };
        assert_eq!(ip(max_i_classes(genus(6), 2).unwrap()), vec![(1, vec![0, 1])]);
        assert_eq!(ip(max_i_classes(genus(7), 3).unwrap()), vec![(1, vec![0, 0, 0])]);
        assert_eq!(ip(max_i_classes(genus(5), 2).unwrap()), vec![(1, vec![0, 0])]);
        assert_eq!(
            khats(&max_i_classes(genus(5), 2).unwrap()),
            vec![vec![2, 2, 2]]
        );
    }

    #[test]
    fn class_lists_for_small_genus() {
        assert_eq!(khats(&classes_for_genus(genus(2))), vec![vec![3], vec![1, 2]]);
        assert_eq!(
            khats(&classes_for_genus(genus(3))),
            vec![vec![4], vec![1, 3], vec![2, 2], vec![1, 1, 2]]
        );
        assert_eq!(
            khats(&classes_for_genus(genus(4))),
            vec![
                vec![5],
                vec![1, 4],
                vec![2, 3],
                vec![1, 1, 3],
                vec![1, 2, 2],
                vec![1, 1, 1, 2]
            ]
        );
    }

    #[test]
    fn class_counts() {
        for g in 2..=20 {
            let gg = genus(g);
            assert_eq!(class_count(gg, 0).unwrap(), 1);
            assert_eq!(class_count(gg, g - 1).unwrap(), 1);
            let all = classes_for_genus(gg);
            assert_eq!(all.len() as u64, total_class_count(gg));
            for r in 0..g {
                let listed = all.iter().filter(|c| c.order() == r).count() as u64;
                assert_eq!(class_count(gg, r).unwrap(), listed);
            }
        }
        assert_eq!(class_count(genus(4), 2).unwrap(), 2);
        assert_eq!(total_class_count(genus(2)), 2);
        assert_eq!(total_class_count(genus(3)), 4);
        assert_eq!(total_class_count(genus(4)), 6);
        assert!(class_count_split(genus(4), 0).is_err());
    }

    #[test]
    fn surface_types_small_genus() {
        let g2: Vec<Vec<u32>> = enumerate_surface_types(genus(2))
            .iter()
            .map(|t| t.counts().to_vec())
            .collect();
        assert_eq!(g2, vec![vec![0, 4], vec![1, 2], vec![2, 0]]);
        let g3 = enumerate_surface_types(genus(3));
        assert_eq!(g3.len(), 14);
        assert!(g3.iter().all(SurfaceType::is_balanced));
        assert_eq!(g3.iter().filter(|t| t.is_published() == Some(true)).count(), 9);
        assert!(g3.windows(2).all(|w| w[0].counts() < w[1].counts()));
    }

    #[test]
    fn census_examples() {
        let t = SurfaceType::new(genus(2), vec![2, 0]).unwrap();
        let census = leaf_census(&t).unwrap();
        assert_eq!(census.weierstrass_leaves, 2);
        assert_eq!(census.weierstrass_leaf_size, 3);
        assert_eq!(census.exceptional_leaf_sizes(), vec![2, 2]);
        assert_eq!(census.standard_leaf_size, 6);
        assert_eq!(census.branch_total, 8);

        let t = SurfaceType::new(genus(3), vec![0, 0, 0, 6]).unwrap();
        assert_eq!(leaf_census(&t).unwrap().exceptional_leaf_sizes(), vec![6; 6]);

        let bad = SurfaceType::new(genus(2), vec![1, 1]).unwrap();
        assert_eq!(
            leaf_census(&bad),
            Err(Error::BranchBudget {
                total: 6,
                expected: 8
            })
        );
        assert!(SurfaceType::new(genus(2), vec![1, 1, 1]).is_err());
    }
}
