//! Exact linear algebra over the rationals: echelon spans, coordinate
//! solves, maximal minors, and a small phase-one simplex for strict
//! homogeneous feasibility.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_rational(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Row-echelon basis of a subspace of `Q^dim`, built incrementally.
///
/// Each stored row has a leading 1 at its pivot column and zeros in the
/// pivot columns of all other rows (reduced form).
#[derive(Clone, Debug)]
pub struct Span {
    dim: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(dim: usize) -> Self {
        Span {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn of<'a, I>(dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a [Rational]>,
    {
        let mut s = Span::new(dim);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, y) in w.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }
}

/// Coordinates of `target` in the (independent) family `basis`, or `None`
/// when `target` is outside its span.
pub fn solve_coordinates(basis: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = basis.len();
    let dim = target.len();
    // augmented system: columns are basis vectors, last column is target
    let mut m: Vec<Vec<Rational>> = (0..dim)
        .map(|row| {
            let mut r: Vec<Rational> = basis.iter().map(|b| b[row].clone()).collect();
            r.push(target[row].clone());
            r
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivot_cols = Vec::with_capacity(k);
    for col in 0..k {
        let Some(sel) = (pivot_row..dim).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, sel);
        let inv = m[pivot_row][col].recip();
        for x in m[pivot_row].iter_mut() {
            *x *= &inv;
        }
        let prow = m[pivot_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    debug_assert_eq!(pivot_cols.len(), k, "basis must be independent");
    let mut out = vec![Rational::zero(); k];
    for (r, &c) in pivot_cols.iter().enumerate() {
        out[c] = m[r][k].clone();
    }
    Some(out)
}

/// Coordinates with respect to a fixed independent family, via the inverse
/// of a nonsingular square submatrix.
#[derive(Clone, Debug)]
pub struct BasisSolver {
    basis: Vec<Vec<Rational>>,
    rows: Vec<usize>,
    inv: Vec<Vec<Rational>>,
}

impl BasisSolver {
    /// `None` when the vectors are dependent.
    pub fn new(basis: Vec<Vec<Rational>>) -> Option<Self> {
        let k = basis.len();
        let dim = basis.first().map_or(0, |b| b.len());
        // pick k coordinate rows on which the basis is independent
        let mut span = Span::new(k);
        let mut rows = Vec::with_capacity(k);
        for row in 0..dim {
            let r: Vec<Rational> = basis.iter().map(|b| b[row].clone()).collect();
            if span.insert(&r) {
                rows.push(row);
                if rows.len() == k {
                    break;
                }
            }
        }
        if rows.len() < k {
            return None;
        }
        // Gauss-Jordan on [A | I] where A[i][j] = basis[j][rows[i]]
        let mut m: Vec<Vec<Rational>> = (0..k)
            .map(|i| {
                let mut r: Vec<Rational> = basis.iter().map(|b| b[rows[i]].clone()).collect();
                r.extend((0..k).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                r
            })
            .collect();
        for col in 0..k {
            let p = (col..k).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, p);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x *= &inv;
            }
            let prow = m[col].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, y) in row.iter_mut().zip(&prow) {
                        if !y.is_zero() {
                            *x -= &f * y;
                        }
                    }
                }
            }
        }
        let inv = m.into_iter().map(|r| r[k..].to_vec()).collect();
        Some(BasisSolver { basis, rows, inv })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of `x`, or `None` when `x` is outside the span.
    pub fn coordinates(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        let picked: Vec<&Rational> = self.rows.iter().map(|&r| &x[r]).collect();
        let c: Vec<Rational> = self
            .inv
            .iter()
            .map(|row| row.iter().zip(&picked).map(|(a, b)| a * *b).sum())
            .collect();
        let ok = (0..x.len()).all(|i| {
            let v: Rational = self.basis.iter().zip(&c).map(|(b, ci)| &b[i] * ci).sum();
            v == x[i]
        });
        ok.then_some(c)
    }
}

/// Determinant of a square integer matrix (fraction-free elimination).
pub fn det_int(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Gcd of all maximal (k x k) minors of a k x d integer matrix given by rows.
/// Equals the product of the elementary divisors; it is 1 exactly when the
/// rows span a saturated sublattice of `Z^d`.
pub fn gcd_maximal_minors(rows: &[Vec<i64>]) -> BigInt {
    let k = rows.len();
    if k == 0 {
        return BigInt::one();
    }
    let d = rows[0].len();
    let mut g = BigInt::zero();
    for cols in combinations(d, k) {
        let sub: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| BigInt::from(r[c])).collect())
            .collect();
        g = g.gcd(&det_int(sub));
        if g.is_one() {
            break;
        }
    }
    g
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Finds `x` with `<c, x> >= 1` for every row `c`, i.e. a point in the
/// interior of the homogeneous cone `{x : <c, x> > 0}`. Returns `None` when
/// that open cone is empty.
pub fn strictly_feasible(constraints: &[Vec<Rational>], dim: usize) -> Option<Vec<Rational>> {
    let m = constraints.len();
    if m == 0 {
        return Some(vec![Rational::zero(); dim]);
    }
    // columns: p (dim), q (dim), slack (m), artificial (m), rhs
    let n = 2 * dim + 2 * m;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for (i, c) in constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); n + 1];
        for j in 0..dim {
            row[j] = c[j].clone();
            row[dim + j] = -c[j].clone();
        }
        row[2 * dim + i] = rat(-1);
        row[2 * dim + m + i] = rat(1);
        row[n] = rat(1);
        t.push(row);
    }
    // objective: minimise sum of artificials, stored as reduced costs
    let mut obj = vec![Rational::zero(); n + 1];
    for row in &t {
        for j in 0..n + 1 {
            if j < 2 * dim + m || j == n {
                obj[j] -= &row[j];
            }
        }
    }
    let mut basis: Vec<usize> = (0..m).map(|i| 2 * dim + m + i).collect();
    // Bland: lowest-index column with negative reduced cost
    while let Some(enter) = (0..n).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[n] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (li, _) = leave?;
        let inv = t[li][enter].recip();
        for x in t[li].iter_mut() {
            *x *= &inv;
        }
        let prow = t[li].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != li && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let f = obj[enter].clone();
        for (x, y) in obj.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        basis[li] = enter;
    }
    if !obj[n].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); dim];
    for (i, &b) in basis.iter().enumerate() {
        if b < dim {
            x[b] += &t[i][n];
        } else if b < 2 * dim {
            x[b - dim] -= &t[i][n];
        }
    }
    debug_assert!(constraints.iter().all(|c| dot(c, &x) >= rat(1)));
    Some(x)
}
