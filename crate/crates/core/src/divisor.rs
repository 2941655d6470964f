//! Points, the hyperelliptic involution and integral divisors.
//!
//! Everything here is symbolic. A [`PointLabel`] names a point by its role
//! in a leaf (`P`, `P_k`, or a Weierstrass point `W_k`) together with a
//! conjugation flag, and a [`Divisor`] is a finite multiset of labels.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PointKind {
    /// The base point `P` of a leaf.
    Base,
    /// An indexed point `P_j`, `j >= 1`.
    Indexed(u32),
    /// A Weierstrass point `W_j`. Fixed by the involution.
    Weierstrass(u32),
}

/// A symbolic point. Conjugation flips `conjugated` except on Weierstrass
/// points, which are their own conjugates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PointLabel {
    kind: PointKind,
    conjugated: bool,
}

impl PointLabel {
    pub const BASE: PointLabel = PointLabel {
        kind: PointKind::Base,
        conjugated: false,
    };

    pub fn base() -> Self {
        Self::BASE
    }

    /// `P_j`. Panics on `j == 0`, which has no meaning as an index.
    pub fn indexed(j: u32) -> Self {
        assert!(j >= 1, "point indices start at 1");
        Self {
            kind: PointKind::Indexed(j),
            conjugated: false,
        }
    }

    pub fn weierstrass(j: u32) -> Self {
        Self {
            kind: PointKind::Weierstrass(j),
            conjugated: false,
        }
    }

    pub fn kind(&self) -> PointKind {
        self.kind
    }

    pub fn is_conjugated(&self) -> bool {
        self.conjugated
    }

    pub fn is_weierstrass(&self) -> bool {
        matches!(self.kind, PointKind::Weierstrass(_))
    }

    #[must_use]
    pub fn conjugate(&self) -> Self {
        if self.is_weierstrass() {
            *self
        } else {
            Self {
                kind: self.kind,
                conjugated: !self.conjugated,
            }
        }
    }

    /// ASCII identifier used in exports: `P`, `Pc`, `P3`, `P3c`, `W0`.
    pub fn ident(&self) -> String {
        self.to_string()
    }

    /// Inverse of [`PointLabel::ident`].
    pub fn parse(s: &str) -> Option<Self> {
        let (body, conjugated) = match s.strip_suffix('c') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let label = if body == "P" {
            Self::base()
        } else if let Some(idx) = body.strip_prefix('P') {
            let j: u32 = idx.parse().ok()?;
            if j == 0 || idx.starts_with('0') {
                return None;
            }
            Self::indexed(j)
        } else {
            let idx = body.strip_prefix('W')?;
            let j: u32 = idx.parse().ok()?;
            if conjugated || idx != j.to_string() {
                return None;
            }
            Self::weierstrass(j)
        };
        Some(if conjugated { label.conjugate() } else { label })
    }
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PointKind::Base => write!(f, "P")?,
            PointKind::Indexed(j) => write!(f, "P{j}")?,
            PointKind::Weierstrass(j) => return write!(f, "W{j}"),
        }
        if self.conjugated {
            write!(f, "c")?;
        }
        Ok(())
    }
}

/// Formal product of points with positive integer exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Divisor {
    terms: BTreeMap<PointLabel, u32>,
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    /// `point^mult`; the empty divisor when `mult == 0`.
    pub fn monomial(point: PointLabel, mult: u32) -> Self {
        std::iter::once((point, mult)).collect()
    }

    /// Multiplicity of `point`, zero when absent.
    pub fn mult(&self, point: &PointLabel) -> u32 {
        self.terms.get(point).copied().unwrap_or(0)
    }

    pub fn contains(&self, point: &PointLabel) -> bool {
        self.terms.contains_key(point)
    }

    pub fn degree(&self) -> u64 {
        self.terms.values().map(|&m| u64::from(m)).sum()
    }

    /// The set of distinct points, written `{D}` in the literature.
    pub fn support(&self) -> BTreeSet<PointLabel> {
        self.terms.keys().copied().collect()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (PointLabel, u32)> + '_ {
        self.terms.iter().map(|(p, m)| (*p, *m))
    }

    /// Replaces every point by its conjugate.
    #[must_use]
    pub fn conjugate(&self) -> Self {
        self.iter().map(|(p, m)| (p.conjugate(), m)).collect()
    }

    /// Copy with the exponent of `point` replaced. Zero removes the term.
    #[must_use]
    pub fn with_mult(&self, point: PointLabel, mult: u32) -> Self {
        let mut terms = self.terms.clone();
        if mult == 0 {
            terms.remove(&point);
        } else {
            terms.insert(point, mult);
        }
        Self { terms }
    }
}

impl FromIterator<(PointLabel, u32)> for Divisor {
    /// Repeated points accumulate; zero exponents are dropped.
    fn from_iter<I: IntoIterator<Item = (PointLabel, u32)>>(iter: I) -> Self {
        let mut terms = BTreeMap::new();
        for (p, m) in iter {
            if m > 0 {
                *terms.entry(p).or_insert(0) += m;
            }
        }
        Self { terms }
    }
}

impl Mul for &Divisor {
    type Output = Divisor;

    fn mul(self, rhs: &Divisor) -> Divisor {
        self.iter().chain(rhs.iter()).collect()
    }
}

impl Mul for Divisor {
    type Output = Divisor;

    fn mul(self, rhs: Divisor) -> Divisor {
        &self * &rhs
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, m) in self.iter() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{m}")?;
            }
        }
        Ok(())
    }
}

/// Genus of the surface, at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Genus(u32);

impl Genus {
    pub fn new(g: u32) -> Result<Self> {
        if g < 2 {
            Err(Error::GenusTooSmall(g))
        } else {
            Ok(Self(g))
        }
    }

    /// Like [`Genus::new`] but also enforces an upper bound.
    pub fn with_ceiling(g: u32, ceiling: u32) -> Result<Self> {
        let genus = Self::new(g)?;
        if g > ceiling {
            return Err(Error::GenusAboveCeiling { genus: g, ceiling });
        }
        Ok(genus)
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for Genus {
    type Error = Error;

    fn try_from(g: u32) -> Result<Self> {
        Self::new(g)
    }
}

impl From<Genus> for u32 {
    fn from(g: Genus) -> u32 {
        g.0
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Number of distinct points of `A`.
pub fn epsilon_degree(divisor: &Divisor) -> usize {
    divisor.support_len()
}

/// Checks `Q in {A_R}  <=>  R in {A_Q}` for every pair of vertices. A label
/// in some divisor that is not itself a vertex makes the family asymmetric.
pub fn mutual_incidence_check(vertex_divisors: &BTreeMap<PointLabel, Divisor>) -> bool {
    vertex_divisors.iter().all(|(q, a_q)| {
        a_q.iter().all(|(r, _)| {
            vertex_divisors
                .get(&r)
                .is_some_and(|a_r| a_r.contains(q))
        })
    })
}
