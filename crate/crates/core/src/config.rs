//! Ordered integer vector configurations.

use crate::error::{Error, Result};
use crate::linalg::{self, Rational, Span};
use crate::subset::{SubsetIdx, MAX_VECTORS};

/// An ordered list of nonzero, pairwise non-proportional integer vectors.
///
/// Position in `vectors` is the arrangement order: index 0 is the minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorConfig {
    ambient_dim: usize,
    vectors: Vec<Vec<i64>>,
    rational: Vec<Vec<Rational>>,
    rank: usize,
}

impl VectorConfig {
    pub fn new(ambient_dim: usize, vectors: Vec<Vec<i64>>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::EmptyConfig);
        }
        if vectors.len() > MAX_VECTORS {
            return Err(Error::TooManyVectors(vectors.len()));
        }
        for (index, v) in vectors.iter().enumerate() {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    index,
                    found: v.len(),
                    expected: ambient_dim,
                });
            }
            if v.iter().all(|&x| x == 0) {
                return Err(Error::ZeroVector(index));
            }
        }
        let rational: Vec<Vec<Rational>> = vectors.iter().map(|v| linalg::to_rational(v)).collect();
        for i in 0..vectors.len() {
            for j in i + 1..vectors.len() {
                let s = Span::of(
                    ambient_dim,
                    [rational[i].as_slice(), rational[j].as_slice()],
                );
                if s.rank() < 2 {
                    return Err(Error::Proportional(i, j));
                }
            }
        }
        let rank = Span::of(ambient_dim, rational.iter().map(|v| v.as_slice())).rank();
        Ok(VectorConfig {
            ambient_dim,
            vectors,
            rational,
            rank,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[i64] {
        &self.vectors[i]
    }

    pub fn rational(&self, i: usize) -> &[Rational] {
        &self.rational[i]
    }

    pub fn all(&self) -> SubsetIdx {
        SubsetIdx::full(self.len())
    }

    /// Returns a configuration whose k-th vector is `self.vector(order[k])`.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        check_permutation(order, self.len())?;
        Ok(VectorConfig {
            ambient_dim: self.ambient_dim,
            vectors: order.iter().map(|&i| self.vectors[i].clone()).collect(),
            rational: order.iter().map(|&i| self.rational[i].clone()).collect(),
            rank: self.rank,
        })
    }

    pub fn check_subset(&self, s: SubsetIdx) -> Result<()> {
        match s.iter().find(|&i| i >= self.len()) {
            Some(i) => Err(Error::IndexOutOfRange(i)),
            None => Ok(()),
        }
    }

    pub fn span_of(&self, s: SubsetIdx) -> Span {
        Span::of(
            self.ambient_dim,
            s.iter().map(|i| self.rational[i].as_slice()),
        )
    }

    pub fn rank_of(&self, s: SubsetIdx) -> usize {
        self.span_of(s).rank()
    }

    pub fn span(&self) -> Span {
        self.span_of(self.all())
    }

    /// A rational linear form with value at least 1 on every vector, if one
    /// exists.
    pub fn positive_form(&self) -> Option<Vec<Rational>> {
        linalg::strictly_feasible(&self.rational, self.ambient_dim)
    }
}

pub(crate) fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(Error::InvalidOrder(format!(
            "expected {n} positions, got {}",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &i in order {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidOrder(format!(
                "{order:?} is not a permutation"
            )));
        }
    }
    Ok(())
}
