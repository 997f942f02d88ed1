//! Stratification of the cone by simplicial cones, and its big cells.
//!
//! A point's signature records, for each cone in a family, whether the point
//! lies in the closed cone and, if so, which of its coordinates are strictly
//! positive. Over the n.b.c. cones of any order this partitions the cone the
//! same way as over all simplicial cones spanned by bases.

use crate::arrangement::{self, NestedSet};
use crate::config::VectorConfig;
use crate::error::{Error, Result};
use crate::linalg::{self, BasisSolver, Rational};
use crate::nested;
use crate::par;

use num_traits::{One, Signed, Zero};

/// Per cone: `None` outside the closed cone, else the strict-positivity
/// pattern of the coordinates.
pub type Signature = Vec<Option<Vec<bool>>>;

fn signature_in(solvers: &[BasisSolver], v: &[Rational]) -> Signature {
    solvers
        .iter()
        .map(|s| {
            let c = s.coordinates(v)?;
            if c.iter().any(Signed::is_negative) {
                return None;
            }
            Some(c.iter().map(Signed::is_positive).collect())
        })
        .collect()
}

/// Signatures over the proper maximal nested sets of a fixed order.
#[derive(Clone, Debug)]
pub struct StratumIndex {
    nested: Vec<NestedSet>,
    solvers: Vec<BasisSolver>,
}

impl StratumIndex {
    pub fn new(config: &VectorConfig) -> Self {
        let nested = nested::enumerate_proper_nested(config);
        let solvers = nested
            .iter()
            .map(|m| {
                let b = (0..m.len())
                    .map(|i| config.rational(m.phi(i)).to_vec())
                    .collect();
                BasisSolver::new(b).expect("proper nested sets give bases")
            })
            .collect();
        StratumIndex { nested, solvers }
    }

    pub fn nested_sets(&self) -> &[NestedSet] {
        &self.nested
    }

    pub fn signature(&self, v: &[Rational]) -> Signature {
        signature_in(&self.solvers, v)
    }
}

/// Signatures over every basis extracted from the configuration.
#[derive(Clone, Debug)]
pub struct BasisIndex {
    bases: Vec<Vec<usize>>,
    solvers: Vec<BasisSolver>,
}

impl BasisIndex {
    pub fn new(config: &VectorConfig) -> Self {
        let (bases, solvers) = linalg::combinations(config.len(), config.rank())
            .into_iter()
            .filter_map(|b| {
                let s = BasisSolver::new(b.iter().map(|&i| config.rational(i).to_vec()).collect())?;
                Some((b, s))
            })
            .unzip();
        BasisIndex { bases, solvers }
    }

    pub fn bases(&self) -> &[Vec<usize>] {
        &self.bases
    }

    pub fn signature(&self, v: &[Rational]) -> Signature {
        signature_in(&self.solvers, v)
    }
}

pub fn stratum_signature(config: &VectorConfig, v: &[Rational]) -> Signature {
    StratumIndex::new(config).signature(v)
}

pub fn allbases_signature(config: &VectorConfig, v: &[Rational]) -> Signature {
    BasisIndex::new(config).signature(v)
}

/// Block number of each item, numbering blocks by first occurrence.
pub fn block_ids<T: PartialEq>(items: &[T]) -> Vec<usize> {
    let mut reps: Vec<&T> = Vec::new();
    items
        .iter()
        .map(|x| match reps.iter().position(|r| *r == x) {
            Some(i) => i,
            None => {
                reps.push(x);
                reps.len() - 1
            }
        })
        .collect()
}

/// Whether the n.b.c. stratifications for two orders partition `points`
/// identically.
pub fn order_invariance_check(
    config: &VectorConfig,
    order1: &[usize],
    order2: &[usize],
    points: &[Vec<Rational>],
) -> Result<bool> {
    let i1 = StratumIndex::new(&config.reordered(order1)?);
    let i2 = StratumIndex::new(&config.reordered(order2)?);
    let s1 = par::map(points, |p| i1.signature(p));
    let s2 = par::map(points, |p| i2.signature(p));
    Ok(block_ids(&s1) == block_ids(&s2))
}

/// Deterministic points of the cone: `Σ c_k α_k / q` with the coefficient
/// vectors `c ∈ {0..3}^N` visited at a fixed stride and `q ∈ {1, 2, 3}`.
pub fn sample_points(config: &VectorConfig, count: usize) -> Vec<Vec<Rational>> {
    const BASE: u128 = 4;
    const STRIDE: u128 = 1_000_003;
    let n = config.len();
    let modulus = BASE.checked_pow(n as u32).unwrap_or(u128::MAX);
    (0..count)
        .map(|idx| {
            let mut j = (idx as u128 + 1).wrapping_mul(STRIDE) % modulus;
            let q = Rational::from_integer(((idx % 3) + 1).into());
            let mut p = vec![Rational::zero(); config.ambient_dim()];
            for k in 0..n {
                let c = Rational::from_integer(((j % BASE) as i64).into());
                j /= BASE;
                if !c.is_zero() {
                    for (x, y) in p.iter_mut().zip(config.rational(k)) {
                        *x += &c * y;
                    }
                }
            }
            p.iter().map(|x| x / &q).collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BigCell {
    /// A point of the cell off every wall.
    pub representative: Vec<Rational>,
    /// The bases whose open simplicial cones contain the cell; the closed
    /// cell is the intersection of their closed cones.
    pub bases: Vec<Vec<usize>>,
    /// n.b.c. stratum signature of the cell.
    pub signature: Signature,
    /// Nested sets whose cones contain the cell.
    pub adapted: Vec<NestedSet>,
}

impl BigCell {
    pub fn contains(&self, config: &VectorConfig, v: &[Rational]) -> bool {
        self.bases.iter().all(|b| {
            arrangement::cone_coordinates(config, b, v)
                .is_ok_and(|c| c.iter().all(|x| !x.is_negative()))
        })
    }
}

fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            d = -d;
        }
        d *= &m[col][col];
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot = &top[col];
        for row in rest {
            let f = &row[col] / &pivot[col];
            if !f.is_zero() {
                for (x, y) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= &f * y;
                }
            }
        }
    }
    d
}

/// Normal of the hyperplane through `rows` (`r - 1` independent vectors of
/// `Q^r`), scaled so its first nonzero entry is 1.
fn normal(rows: &[Vec<Rational>], r: usize) -> Vec<Rational> {
    let mut n: Vec<Rational> = (0..r)
        .map(|i| {
            let minor = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let d = det(minor);
            if i % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    let lead = n
        .iter()
        .find(|x| !x.is_zero())
        .cloned()
        .expect("independent rows");
    for x in n.iter_mut() {
        *x /= &lead;
    }
    n
}

/// Big cells: the regions cut out of the cone by every hyperplane spanned
/// by `r - 1` vectors, grouped by the simplicial cones containing them.
pub fn big_cells(config: &VectorConfig) -> Result<Vec<BigCell>> {
    if config.positive_form().is_none() {
        return Err(Error::NotAcute);
    }
    let r = config.rank();
    // coordinates in a fixed basis of the span
    let frame_idx = arrangement::nbc_bases(config)
        .into_iter()
        .next()
        .expect("a spanning configuration has a basis")
        .0;
    let frame: Vec<Vec<Rational>> = frame_idx
        .iter()
        .map(|&i| config.rational(i).to_vec())
        .collect();
    let solver = BasisSolver::new(frame.clone()).expect("basis");
    let coords: Vec<Vec<Rational>> = (0..config.len())
        .map(|k| solver.coordinates(config.rational(k)).expect("in span"))
        .collect();

    let mut walls: Vec<Vec<Rational>> = Vec::new();
    for sub in linalg::combinations(config.len(), r - 1) {
        let rows: Vec<Vec<Rational>> = sub.iter().map(|&k| coords[k].clone()).collect();
        if linalg::Span::of(r, rows.iter().map(|v| v.as_slice())).rank() == r - 1 {
            let n = normal(&rows, r);
            if !walls.contains(&n) {
                walls.push(n);
            }
        }
    }

    let mut facets = Vec::new();
    let mut inner = Vec::new();
    for w in walls {
        let signs: Vec<Rational> = coords.iter().map(|c| linalg::dot(&w, c)).collect();
        if signs.iter().all(|s| !s.is_negative()) {
            facets.push(w);
        } else if signs.iter().all(|s| !s.is_positive()) {
            facets.push(w.iter().map(|x| -x).collect());
        } else {
            inner.push(w);
        }
    }

    let mut regions: Vec<Vec<Vec<Rational>>> = vec![facets];
    for w in &inner {
        let neg: Vec<Rational> = w.iter().map(|x| -x).collect();
        let next: Vec<Vec<Vec<Rational>>> = par::map(&regions, |reg| {
            [w, &neg]
                .into_iter()
                .filter_map(|h| {
                    let mut c = reg.clone();
                    c.push(h.clone());
                    linalg::strictly_feasible(&c, r).map(|_| c)
                })
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect();
        regions = next;
    }

    let reps: Vec<Vec<Rational>> = par::map(&regions, |reg| {
        let y = linalg::strictly_feasible(reg, r).expect("regions are feasible");
        let mut x = vec![Rational::zero(); config.ambient_dim()];
        for (yi, b) in y.iter().zip(&frame) {
            for (xj, bj) in x.iter_mut().zip(b) {
                *xj += yi * bj;
            }
        }
        x
    });

    let all = BasisIndex::new(config);
    let strata = StratumIndex::new(config);
    let keys = par::map(&reps, |p| all.signature(p));
    let mut cells: Vec<BigCell> = Vec::new();
    let mut seen: Vec<&Signature> = Vec::new();
    for (p, key) in reps.iter().zip(&keys) {
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);
        let bases = all
            .bases()
            .iter()
            .zip(key)
            .filter_map(|(b, s)| s.as_ref().map(|_| b.clone()))
            .collect();
        let signature = strata.signature(p);
        let adapted = strata
            .nested_sets()
            .iter()
            .zip(&signature)
            .filter_map(|(m, s)| s.as_ref().map(|_| m.clone()))
            .collect();
        cells.push(BigCell {
            representative: p.clone(),
            bases,
            signature,
            adapted,
        });
    }
    Ok(cells)
}
