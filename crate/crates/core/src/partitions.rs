//! Restricted integer partitions.
//!
//! `sigma(m, k, l)` is the number of ways to write `m` as a sum of exactly
//! `k` non-decreasing parts, each at least `l`. Partitions are kept in
//! ascending order so that the smallest part comes first.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Non-decreasing tuple of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts `parts` ascending. Rejects zero parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartitionArgs(
                "partition parts must be positive".into(),
            ));
        }
        parts.sort_unstable();
        Ok(Self { parts })
    }

    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(!parts.contains(&0));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, p) in self.parts.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

fn check_args(k: u32, min_part: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidPartitionArgs("number of parts must be >= 1".into()));
    }
    if min_part == 0 {
        return Err(Error::InvalidPartitionArgs("minimal part must be >= 1".into()));
    }
    Ok(())
}

/// Lazy lexicographic enumeration of the partitions of `m` into exactly
/// `k` parts, each at least `min_part`.
#[derive(Debug, Clone)]
pub struct Partitions {
    target: u32,
    current: Vec<u32>,
    done: bool,
}

impl Partitions {
    fn new(m: u32, k: u32, min_part: u32) -> Self {
        let k_us = k as usize;
        let floor = u64::from(k) * u64::from(min_part);
        if floor > u64::from(m) {
            return Self {
                target: m,
                current: Vec::new(),
                done: true,
            };
        }
        // Lexicographically first: all minimal parts, remainder in the last.
        let mut current = vec![min_part; k_us];
        current[k_us - 1] = m - (k - 1) * min_part;
        Self {
            target: m,
            current,
            done: false,
        }
    }

    /// Moves to the lexicographic successor, or marks exhaustion.
    fn advance(&mut self) {
        let k = self.current.len();
        if k < 2 {
            self.done = true;
            return;
        }
        // Find the rightmost free position j (< k-1) that can be bumped by one
        // while leaving room for the tail to stay non-decreasing.
        let mut prefix: u64 = self.current[..k - 1].iter().map(|&x| u64::from(x)).sum();
        for j in (0..k - 1).rev() {
            prefix -= u64::from(self.current[j]);
            let bumped = self.current[j] + 1;
            let tail_len = (k - j) as u64;
            if prefix + tail_len * u64::from(bumped) <= u64::from(self.target) {
                for slot in &mut self.current[j..k - 1] {
                    *slot = bumped;
                }
                let used = prefix + (tail_len - 1) * u64::from(bumped);
                self.current[k - 1] = (u64::from(self.target) - used) as u32;
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let out = Partition::from_sorted(self.current.clone());
        self.advance();
        Some(out)
    }
}

/// Lazy variant of [`enumerate_partitions`].
pub fn partitions(m: u32, k: u32, min_part: u32) -> Result<Partitions> {
    check_args(k, min_part)?;
    Ok(Partitions::new(m, k, min_part))
}

/// All partitions of `m` into exactly `k` parts `>= min_part`, in
/// lexicographic order.
pub fn enumerate_partitions(m: u32, k: u32, min_part: u32) -> Result<Vec<Partition>> {
    Ok(partitions(m, k, min_part)?.collect())
}

/// `sigma(m, k, min_part)` by the recurrence
/// `s(m, k, l) = s(m - l, k - 1, l) + s(m, k, l + 1)`
/// (either the smallest part equals `l`, or every part exceeds it).
pub fn count_partitions(m: u32, k: u32, min_part: u32) -> Result<u64> {
    check_args(k, min_part)?;
    let mut memo = HashMap::new();
    Ok(sigma(m, k, min_part, &mut memo))
}

fn sigma(m: u32, k: u32, l: u32, memo: &mut HashMap<(u32, u32, u32), u64>) -> u64 {
    if k == 0 {
        return u64::from(m == 0);
    }
    if u64::from(k) * u64::from(l) > u64::from(m) {
        return 0;
    }
    if k == 1 {
        return 1;
    }
    if let Some(&v) = memo.get(&(m, k, l)) {
        return v;
    }
    let v = sigma(m - l, k - 1, l, memo) + sigma(m, k, l + 1, memo);
    memo.insert((m, k, l), v);
    v
}

/// Unrestricted partition number `p(m)` via Euler's pentagonal recurrence.
pub fn total_partitions(m: u32) -> u64 {
    let m = m as usize;
    let mut p = vec![0i128; m + 1];
    p[0] = 1;
    for n in 1..=m {
        let mut acc: i128 = 0;
        for j in 1i64.. {
            let g1 = (j * (3 * j - 1) / 2) as usize;
            if g1 > n {
                break;
            }
            let sign = if j % 2 == 1 { 1 } else { -1 };
            acc += sign * p[n - g1];
            let g2 = (j * (3 * j + 1) / 2) as usize;
            if g2 <= n {
                acc += sign * p[n - g2];
            }
        }
        p[n] = acc;
    }
    p[m] as u64
}
