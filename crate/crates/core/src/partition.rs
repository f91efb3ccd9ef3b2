//! Integer partitions.
//!
//! Partitions index both the monomials b_ω = ∏ b_i^{k_i} of the coefficient
//! ring and the characteristic numbers s_ω. Parts are stored in descending
//! order; the canonical total order (and the order of [`partitions_of`]) is
//! by weight, then reverse-lexicographic on the sorted parts, e.g. for n = 4:
//! (4), (3,1), (2,2), (2,1,1), (1,1,1,1).

use std::cmp::Ordering;
use std::fmt;

use crate::rational::OddPrime;

/// A partition of a non-negative integer: parts ≥ 1, sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Canonicalize an arbitrary list of positive parts.
    ///
    /// Panics if any part is zero.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(
            parts.iter().all(|&x| x >= 1),
            "partition parts must be >= 1"
        );
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-part partition (n).
    pub fn single(n: u32) -> Self {
        assert!(n >= 1);
        Partition(vec![n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// ‖ω‖ = sum of parts.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// |ω| = number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiset union; this is how monomials multiply.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut merged = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] >= other.0[j] {
                merged.push(self.0[i]);
                i += 1;
            } else {
                merged.push(other.0[j]);
                j += 1;
            }
        }
        merged.extend_from_slice(&self.0[i..]);
        merged.extend_from_slice(&other.0[j..]);
        Partition(merged)
    }

    /// Number of parts of the form p^k − 1, k ≥ 1.
    pub fn count_p_power_minus_one_parts(&self, p: OddPrime) -> u32 {
        self.0
            .iter()
            .filter(|&&x| is_p_power_minus_one(x, p))
            .count() as u32
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, part) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{part}")?;
        }
        write!(f, "]")
    }
}

/// All partitions of n, in the canonical order. n = 0 yields [()].
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    gen(n, n, &mut stack, &mut out);
    out
}

fn gen(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition(stack.clone()));
        return;
    }
    let mut first = remaining.min(max_part);
    while first >= 1 {
        stack.push(first);
        gen(remaining - first, first, stack, out);
        stack.pop();
        first -= 1;
    }
}

/// True iff n = p^k − 1 for some k ≥ 1.
pub fn is_p_power_minus_one(n: u32, p: OddPrime) -> bool {
    let mut m = (n as u64) + 1;
    let p = p.get() as u64;
    if m < p {
        return false;
    }
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// The two partition predicates driving the mod-p tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionClass {
    /// Every part is divisible by p − 1.
    pub divisible_by_p_minus_1: bool,
    /// No part has the form p^j − 1, j ≥ 1.
    pub non_p_adic: bool,
}

pub fn classify_partition(omega: &Partition, p: OddPrime) -> PartitionClass {
    let pm1 = p.get() - 1;
    PartitionClass {
        divisible_by_p_minus_1: omega.parts().iter().all(|&x| x % pm1 == 0),
        non_p_adic: !omega.parts().iter().any(|&x| is_p_power_minus_one(x, p)),
    }
}
