//! Subsets of a vector configuration, stored as bitmasks over positions.

use std::cmp::Ordering;
use std::fmt;

/// Maximum number of vectors a configuration may hold.
pub const MAX_VECTORS: usize = 64;

/// A set of positions into [`crate::VectorConfig::vectors`].
///
/// Ordering is by size first, then lexicographically by the sorted index
/// sequence, so lists of subsets sort into a stable canonical order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubsetIdx(u64);

impl SubsetIdx {
    pub const EMPTY: SubsetIdx = SubsetIdx(0);

    pub fn from_bits(bits: u64) -> Self {
        SubsetIdx(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VECTORS);
        if n == MAX_VECTORS {
            SubsetIdx(u64::MAX)
        } else {
            SubsetIdx((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_VECTORS);
        SubsetIdx(1u64 << i)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_VECTORS && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn with(self, i: usize) -> Self {
        SubsetIdx(self.0 | 1u64 << i)
    }

    pub fn union(self, other: Self) -> Self {
        SubsetIdx(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        SubsetIdx(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        SubsetIdx(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest position, i.e. the minimum in the arrangement order.
    pub fn min_index(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = SubsetIdx> {
        let full = self.0;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let out = cur?;
            cur = if out == full {
                None
            } else {
                Some((out.wrapping_sub(full)) & full)
            };
            Some(SubsetIdx(out))
        })
    }
}

impl FromIterator<usize> for SubsetIdx {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = SubsetIdx::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl Ord for SubsetIdx {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for SubsetIdx {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubsetIdx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for SubsetIdx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}
