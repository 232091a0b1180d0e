//! Integer partitions, hook lengths and the generic core predicates.
//!
//! Everything here is deliberately naive: it is the ground truth the abacus
//! machinery is checked against, so it works directly on part lists.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::PartitionError;

/// Default cap on the number of partitions [`enumerate_ab_cores`] may visit.
pub const DEFAULT_PARTITION_WORK_LIMIT: u128 = 20_000_000;

/// A nonincreasing sequence of positive integers.
///
/// Serializes as a bare JSON array, e.g. `[3,2,2,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition, rejecting zero parts and increases.
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        if let Some(i) = parts.iter().position(|&p| p == 0) {
            return Err(PartitionError::NonPositivePart { index: i });
        }
        if let Some(i) = parts.windows(2).position(|w| w[0] < w[1]) {
            return Err(PartitionError::Increasing { index: i + 1 });
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn largest(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// Smallest part, or 0 for the empty partition.
    pub fn smallest(&self) -> usize {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Consecutive differences `λ_i - λ_{i+1}` for `1 <= i <= ℓ`, with `λ_{ℓ+1} = 0`.
    ///
    /// The final entry is the smallest part.
    pub fn differences(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.0.len());
        for (i, &p) in self.0.iter().enumerate() {
            let next = self.0.get(i + 1).copied().unwrap_or(0);
            out.push(p - next);
        }
        out
    }

    pub fn conjugate(&self) -> Partition {
        let largest = self.largest();
        let parts = (0..largest)
            .map(|j| self.0.iter().take_while(|&&p| p > j).count())
            .collect();
        Partition(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;

    fn try_from(parts: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Hook lengths of every cell, sorted in decreasing order.
///
/// Cells are indexed by rows (parts); the multiset does not depend on that
/// choice because it is invariant under conjugation.
pub fn hook_multiset(lambda: &Partition) -> Vec<usize> {
    let conj = lambda.conjugate();
    let col = conj.parts();
    let mut hooks = Vec::with_capacity(lambda.size());
    for (i, &row) in lambda.parts().iter().enumerate() {
        for (j, &height) in col.iter().enumerate().take(row) {
            let arm = row - j - 1;
            let leg = height - i - 1;
            hooks.push(arm + leg + 1);
        }
    }
    hooks.sort_unstable_by(|a, b| b.cmp(a));
    hooks
}

/// True iff no cell of `lambda` has hook length `a`.
pub fn is_core(lambda: &Partition, a: usize) -> bool {
    !hook_multiset(lambda).contains(&a)
}

pub fn is_ab_core(lambda: &Partition, a: usize, b: usize) -> bool {
    let hooks = hook_multiset(lambda);
    !hooks.contains(&a) && !hooks.contains(&b)
}

/// Largest size of an `(a, b)`-core for coprime `a`, `b`: `(a²-1)(b²-1)/24`.
///
/// This is a known result about simultaneous cores, used here only as an
/// enumeration cutoff.
pub fn max_core_size(a: usize, b: usize) -> usize {
    (a * a - 1) * (b * b - 1) / 24
}

/// Number of partitions of each size `0..=n`.
pub fn partition_counts(n: usize) -> Vec<u128> {
    let mut p = vec![0u128; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            p[total] = p[total].saturating_add(p[total - part]);
        }
    }
    p
}

/// All partitions of `size` in reverse lexicographic order, `(size)` first.
pub fn partitions_of(size: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_partitions(size, size, &mut current, &mut out);
    out
}

fn fill_partitions(rest: usize, cap: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for part in (1..=cap.min(rest)).rev() {
        current.push(part);
        fill_partitions(rest - part, part, current, out);
        current.pop();
    }
}

/// Every `(a, b)`-core of size at most `size_bound`, ordered by size and then
/// reverse lexicographically within a size.
pub fn enumerate_ab_cores(a: usize, b: usize, size_bound: usize) -> Result<Vec<Partition>, PartitionError> {
    enumerate_ab_cores_limited(a, b, size_bound, DEFAULT_PARTITION_WORK_LIMIT)
}

pub fn enumerate_ab_cores_limited(
    a: usize,
    b: usize,
    size_bound: usize,
    work_limit: u128,
) -> Result<Vec<Partition>, PartitionError> {
    if a == 0 || b == 0 {
        return Err(PartitionError::ZeroModulus);
    }
    let work: u128 = partition_counts(size_bound).iter().fold(0u128, |acc, &c| acc.saturating_add(c));
    if work > work_limit {
        return Err(PartitionError::WorkLimit { required: work, limit: work_limit });
    }
    let mut cores = Vec::new();
    for size in 0..=size_bound {
        cores.extend(partitions_of(size).into_iter().filter(|p| is_ab_core(p, a, b)));
    }
    Ok(cores)
}

/// All `(a, b)`-cores, using the maximal-size cutoff. Requires `gcd(a, b) = 1`.
pub fn all_ab_cores(a: usize, b: usize) -> Result<Vec<Partition>, PartitionError> {
    if a == 0 || b == 0 {
        return Err(PartitionError::ZeroModulus);
    }
    if a.gcd(&b) != 1 {
        return Err(PartitionError::NotCoprime { a, b });
    }
    enumerate_ab_cores(a, b, max_core_size(a, b))
}
