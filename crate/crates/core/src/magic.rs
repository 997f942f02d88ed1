//! Transportation arrangements `M(m, n)`: the vectors `(i|j) = e_i - f_j`
//! of the complete bipartite graph, in lexicographic order.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::config::VectorConfig;
use crate::error::{Error, Result};
use crate::graph::{self, OrientedGraph};
use crate::residue::Engine;
use crate::subset::SubsetIdx;

#[derive(Clone, Debug)]
pub struct MagicConfig {
    m: usize,
    n: usize,
    graph: OrientedGraph,
    config: VectorConfig,
}

impl MagicConfig {
    /// Rows are vertices `r1..rm`, columns `c1..cn`; edge `(i|j)` runs from
    /// column `j` to row `i`.
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidGraph("M(m, n) needs m, n ≥ 1".into()));
        }
        let mut vertices: Vec<String> = (1..=m).map(|i| format!("r{i}")).collect();
        vertices.extend((1..=n).map(|j| format!("c{j}")));
        let edges = (0..m)
            .flat_map(|i| (0..n).map(move |j| (m + j, i)))
            .collect();
        let graph = OrientedGraph::new(vertices, edges)?;
        let config = graph::incidence_config(&graph)?;
        Ok(MagicConfig {
            m,
            n,
            graph,
            config,
        })
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &OrientedGraph {
        &self.graph
    }

    pub fn config(&self) -> &VectorConfig {
        &self.config
    }

    /// Position of `(i|j)`, zero-based.
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    pub fn entry(&self, k: usize) -> (usize, usize) {
        (k / self.n, k % self.n)
    }

    pub fn rectangle(&self, rows: &[usize], cols: &[usize]) -> SubsetIdx {
        rows.iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.index(i, j)))
            .collect()
    }

    /// `Σ r_i e_i - Σ c_j f_j`.
    pub fn target(&self, row_sums: &[i64], col_sums: &[i64]) -> Result<Vec<i64>> {
        if row_sums.len() != self.m {
            return Err(Error::MarginLength {
                found: row_sums.len(),
                expected: self.m,
            });
        }
        if col_sums.len() != self.n {
            return Err(Error::MarginLength {
                found: col_sums.len(),
                expected: self.n,
            });
        }
        if row_sums.iter().chain(col_sums).any(|&x| x < 0) {
            return Err(Error::NegativeMargin);
        }
        let (rows, cols): (i64, i64) = (row_sums.iter().sum(), col_sums.iter().sum());
        if rows != cols {
            return Err(Error::MarginMismatch { rows, cols });
        }
        Ok(row_sums
            .iter()
            .copied()
            .chain(col_sums.iter().map(|c| -c))
            .collect())
    }
}

/// Rectangles `A_i × B_i` with pairwise disjoint row sets and column sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectangleUnion(pub Vec<(Vec<usize>, Vec<usize>)>);

/// Completeness by the little-square rule: whenever three corners of a
/// `2×2` sub-rectangle lie in `s`, so does the fourth. Complete sets come
/// back with their rectangle decomposition.
pub fn is_complete_magic(mc: &MagicConfig, s: SubsetIdx) -> Option<RectangleUnion> {
    let (m, n) = (mc.m, mc.n);
    let has = |i: usize, j: usize| s.contains(mc.index(i, j));
    for i in 0..m {
        for i2 in i + 1..m {
            for j in 0..n {
                for j2 in j + 1..n {
                    let corners = [has(i, j), has(i, j2), has(i2, j), has(i2, j2)];
                    if corners.iter().filter(|&&c| c).count() == 3 {
                        return None;
                    }
                }
            }
        }
    }
    let rects: Vec<(Vec<usize>, Vec<usize>)> = mc
        .graph
        .components(s)
        .into_iter()
        .map(|(vs, _)| {
            let rows = vs.iter().copied().filter(|&v| v < m).collect();
            let cols = vs.iter().filter(|&&v| v >= m).map(|&v| v - m).collect();
            (rows, cols)
        })
        .collect();
    debug_assert_eq!(
        rects.iter().fold(SubsetIdx::EMPTY, |acc, (a, b)| acc
            .union(mc.rectangle(a, b))),
        s
    );
    Some(RectangleUnion(rects))
}

/// The maximal proper complete subsets: `A×B ∪ A^c×B^c` for proper `A`, `B`,
/// and the row and column deletions, keeping those of rank `m + n - 2`.
pub fn maximal_proper_complete_magic(mc: &MagicConfig) -> Vec<SubsetIdx> {
    let (m, n) = (mc.m, mc.n);
    let all_rows: Vec<usize> = (0..m).collect();
    let all_cols: Vec<usize> = (0..n).collect();
    let split = |mask: u64, k: usize| -> (Vec<usize>, Vec<usize>) {
        (0..k).partition(|&i| mask >> i & 1 == 1)
    };
    let mut out = Vec::new();
    for am in 1..(1u64 << m) - 1 {
        let (a, ac) = split(am, m);
        for bm in 1..(1u64 << n) - 1 {
            let (b, bc) = split(bm, n);
            out.push(mc.rectangle(&a, &b).union(mc.rectangle(&ac, &bc)));
        }
    }
    for i in 0..m {
        let rows: Vec<usize> = all_rows.iter().copied().filter(|&x| x != i).collect();
        out.push(mc.rectangle(&rows, &all_cols));
    }
    for j in 0..n {
        let cols: Vec<usize> = all_cols.iter().copied().filter(|&x| x != j).collect();
        out.push(mc.rectangle(&all_rows, &cols));
    }
    let target = m + n - 2;
    out.retain(|&s| mc.config.rank_of(s) == target);
    out.sort();
    out.dedup();
    out
}

fn betti_memo() -> &'static Mutex<HashMap<(usize, usize), BigInt>> {
    static MEMO: OnceLock<Mutex<HashMap<(usize, usize), BigInt>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `b(m, n)` from the recursion
/// `b(m-1, n) + b(m, n-1) + Σ_{a<m, 1≤c<n} C(m-1, a-1) C(n-1, c) b(a, c) b(m-a, n-c)`
/// with `b(1, k) = b(k, 1) = 1`.
pub fn betti_recursion(m: usize, n: usize) -> BigInt {
    assert!(m >= 1 && n >= 1, "b(m, n) needs m, n ≥ 1");
    if m == 1 || n == 1 {
        return BigInt::one();
    }
    if let Some(v) = betti_memo().lock().expect("memo lock").get(&(m, n)) {
        return v.clone();
    }
    let mut v = betti_recursion(m - 1, n) + betti_recursion(m, n - 1);
    for a in 1..m {
        for c in 1..n {
            v += binomial(m - 1, a - 1)
                * binomial(n - 1, c)
                * betti_recursion(a, c)
                * betti_recursion(m - a, n - c);
        }
    }
    betti_memo()
        .lock()
        .expect("memo lock")
        .insert((m, n), v.clone());
    v
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Number of `m × n` non-negative integer matrices with the given margins.
pub fn transportation_count(
    m: usize,
    n: usize,
    row_sums: &[i64],
    col_sums: &[i64],
) -> Result<BigInt> {
    let mc = MagicConfig::new(m, n)?;
    let a = mc.target(row_sums, col_sums)?;
    if a.iter().all(|x| *x == 0) {
        return Ok(BigInt::one());
    }
    let engine = Engine::for_graph(mc.graph)?;
    let r = engine.count(&a)?;
    debug_assert!(!r.total.is_zero());
    Ok(r.total)
}
