//! Brute-force reference implementations.
//!
//! Nothing here shares code with `polyflow-core`: vectors come in as plain
//! `i64` slices and all linear algebra is re-done locally, so agreement
//! between the two crates is independent evidence.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// No linear form is positive on every vector.
    NoPositiveForm,
    /// The counts did not fit a polynomial of the stated degree.
    Interpolation { degree: usize },
}

impl std::fmt::Display for OracleError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleError::NoPositiveForm => write!(f, "no linear form is positive on every vector"),
            OracleError::Interpolation { degree } => {
                write!(f, "counts are not a polynomial of degree <= {degree}")
            }
        }
    }
}

impl std::error::Error for OracleError {}

/// An integer linear form positive on every vector, found by perceptron
/// updates. Terminates whenever such a form exists.
pub fn positive_form(vectors: &[Vec<i64>]) -> Result<Vec<i128>, OracleError> {
    let d = vectors.first().map_or(0, |v| v.len());
    let mut w = vec![0i128; d];
    for v in vectors {
        for (x, &y) in w.iter_mut().zip(v) {
            *x += y as i128;
        }
    }
    let ip = |w: &[i128], v: &[i64]| w.iter().zip(v).map(|(a, &b)| a * b as i128).sum::<i128>();
    for _ in 0..1_000_000 {
        match vectors.iter().find(|v| ip(&w, v) <= 0) {
            None => return Ok(w),
            Some(v) => {
                for (x, &y) in w.iter_mut().zip(v) {
                    *x += y as i128;
                }
            }
        }
    }
    Err(OracleError::NoPositiveForm)
}

/// Number of non-negative integer solutions of `sum_k x_k v_k = target`.
pub fn brute_count(vectors: &[Vec<i64>], target: &[i64]) -> Result<u64, OracleError> {
    let w = positive_form(vectors)?;
    let weights: Vec<i128> = vectors
        .iter()
        .map(|v| w.iter().zip(v).map(|(a, &b)| a * b as i128).sum())
        .collect();
    let mut rem: Vec<i128> = target.iter().map(|&x| x as i128).collect();
    Ok(count_rec(vectors, &weights, &w, 0, &mut rem))
}

fn count_rec(
    vectors: &[Vec<i64>],
    weights: &[i128],
    w: &[i128],
    k: usize,
    rem: &mut Vec<i128>,
) -> u64 {
    let budget: i128 = w.iter().zip(rem.iter()).map(|(a, b)| a * b).sum();
    if budget < 0 {
        return 0;
    }
    if budget == 0 || k == vectors.len() {
        return u64::from(rem.iter().all(|&x| x == 0));
    }
    if k + 1 == vectors.len() {
        // the last multiplier is forced
        let v = &vectors[k];
        let x = budget / weights[k];
        let ok = budget % weights[k] == 0 && rem.iter().zip(v).all(|(&r, &c)| r == x * c as i128);
        return u64::from(ok);
    }
    let v = &vectors[k];
    let max = budget / weights[k];
    let mut total = 0;
    for x in 0..=max {
        total += count_rec(vectors, weights, w, k + 1, rem);
        if x < max {
            for (r, &c) in rem.iter_mut().zip(v) {
                *r -= c as i128;
            }
        }
    }
    for (r, &c) in rem.iter_mut().zip(v) {
        *r += max * c as i128;
    }
    total
}

/// Number of m x n non-negative integer matrices with the given margins,
/// by direct enumeration of rows.
pub fn brute_transportation(rows: &[i64], cols: &[i64]) -> u64 {
    if rows.iter().sum::<i64>() != cols.iter().sum::<i64>() {
        return 0;
    }
    fn fill_row(rows: &[i64], cols: &mut Vec<i64>, j: usize, left: i64) -> u64 {
        if j + 1 == cols.len() {
            if left > cols[j] {
                return 0;
            }
            cols[j] -= left;
            let r = next_row(&rows[1..], cols);
            cols[j] += left;
            return r;
        }
        let mut total = 0;
        for x in 0..=left.min(cols[j]) {
            cols[j] -= x;
            total += fill_row(rows, cols, j + 1, left - x);
            cols[j] += x;
        }
        total
    }
    fn next_row(rows: &[i64], cols: &mut Vec<i64>) -> u64 {
        match rows.first() {
            None => u64::from(cols.iter().all(|&c| c == 0)),
            Some(&r) => fill_row(rows, cols, 0, r),
        }
    }
    if cols.is_empty() {
        return u64::from(rows.iter().all(|&r| r == 0));
    }
    next_row(rows, &mut cols.to_vec())
}

/// Interpolates `t -> brute_count(t * target)` exactly from `degree + 1`
/// samples and confirms the fit at two further points. Coefficients are in
/// ascending degree with trailing zeros removed.
pub fn brute_ehrhart(
    vectors: &[Vec<i64>],
    target: &[i64],
    degree: usize,
) -> Result<Vec<Q>, OracleError> {
    let samples: Vec<Q> = (0..degree as i64 + 3)
        .map(|t| {
            let a: Vec<i64> = target.iter().map(|&x| x * t).collect();
            brute_count(vectors, &a).map(|c| Q::from_integer(BigInt::from(c)))
        })
        .collect::<Result<_, _>>()?;
    let coeffs = interpolate(&samples[..=degree]);
    for (t, value) in samples.iter().enumerate().skip(degree + 1) {
        if evaluate(&coeffs, &q(t as i64)) != *value {
            return Err(OracleError::Interpolation { degree });
        }
    }
    Ok(coeffs)
}

/// Polynomial through `(t, values[t])` for `t = 0..values.len()`.
pub fn interpolate(values: &[Q]) -> Vec<Q> {
    let n = values.len();
    let mut coeffs = vec![Q::zero(); n];
    for (i, yi) in values.iter().enumerate() {
        // Lagrange basis polynomial for node i
        let mut basis = vec![Q::one()];
        let mut denom = Q::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut next = vec![Q::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * q(j as i64);
            }
            basis = next;
            denom *= q(i as i64 - j as i64);
        }
        for (k, c) in basis.iter().enumerate() {
            coeffs[k] += c * yi / &denom;
        }
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

pub fn evaluate(coeffs: &[Q], t: &Q) -> Q {
    coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * t + c)
}

fn rank(vectors: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = vectors.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Coordinates of `x` in the independent family `basis`, if `x` is in its span.
fn coordinates(basis: &[Vec<Q>], x: &[Q]) -> Option<Vec<Q>> {
    let k = basis.len();
    let d = x.len();
    let mut m: Vec<Vec<Q>> = (0..d)
        .map(|i| {
            basis
                .iter()
                .map(|b| b[i].clone())
                .chain([x[i].clone()])
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..d).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..d {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot = m[r].clone();
                for (v, y) in m[i].iter_mut().zip(&pivot) {
                    *v -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut out = vec![Q::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        out[c] = m[i][k].clone();
    }
    Some(out)
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn to_q(vectors: &[Vec<i64>]) -> Vec<Vec<Q>> {
    vectors
        .iter()
        .map(|v| v.iter().map(|&x| q(x)).collect())
        .collect()
}

/// All bases of the span of `vectors` (as increasing position lists).
pub fn all_bases(vectors: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let qs = to_q(vectors);
    let r = rank(&qs);
    subsets_of_size(vectors.len(), r)
        .into_iter()
        .filter(|b| rank(&b.iter().map(|&i| qs[i].clone()).collect::<Vec<_>>()) == r)
        .collect()
}

/// Number of n.b.c. bases, by filtering every basis.
pub fn brute_nbc_count(vectors: &[Vec<i64>]) -> usize {
    let qs = to_q(vectors);
    all_bases(vectors)
        .into_iter()
        .filter(|b| {
            (0..b.len()).all(|l| {
                let tail: Vec<Vec<Q>> = b[l..].iter().map(|&i| qs[i].clone()).collect();
                let r = rank(&tail);
                (0..b[l]).all(|j| {
                    let mut ext = tail.clone();
                    ext.push(qs[j].clone());
                    rank(&ext) > r
                })
            })
        })
        .count()
}

/// Per-basis state of a point: `None` outside the closed simplicial cone,
/// otherwise the positions of its strictly positive coordinates.
pub type Signature = Vec<Option<Vec<bool>>>;

/// Signature of `point` against every basis extracted from `vectors`.
pub fn all_bases_signature(vectors: &[Vec<i64>], point: &[Q]) -> Signature {
    let qs = to_q(vectors);
    all_bases(vectors)
        .iter()
        .map(|b| {
            let basis: Vec<Vec<Q>> = b.iter().map(|&i| qs[i].clone()).collect();
            let c = coordinates(&basis, point)?;
            if c.iter().any(Signed::is_negative) {
                None
            } else {
                Some(c.iter().map(Signed::is_positive).collect())
            }
        })
        .collect()
}

/// Partition of `points` by all-bases signature, as block ids assigned in
/// order of first appearance.
pub fn brute_strata(vectors: &[Vec<i64>], points: &[Vec<Q>]) -> Vec<usize> {
    let sigs: Vec<Signature> = points
        .iter()
        .map(|p| all_bases_signature(vectors, p))
        .collect();
    block_ids(&sigs)
}

pub fn block_ids<T: PartialEq>(keys: &[T]) -> Vec<usize> {
    let mut reps: Vec<&T> = Vec::new();
    keys.iter()
        .map(|k| match reps.iter().position(|r| *r == k) {
            Some(i) => i,
            None => {
                reps.push(k);
                reps.len() - 1
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Vec<Vec<i64>> {
        vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]
    }

    fn magic(m: usize, n: usize) -> Vec<Vec<i64>> {
        let mut vs = Vec::new();
        for i in 0..m {
            for j in 0..n {
                let mut v = vec![0; m + n];
                v[i] = 1;
                v[m + j] = -1;
                vs.push(v);
            }
        }
        vs
    }

    #[test]
    fn counts() {
        assert_eq!(brute_count(&a2(), &[1, 0, -1]), Ok(2));
        assert_eq!(brute_count(&a2(), &[0, 0, 0]), Ok(1));
        assert_eq!(brute_count(&a2(), &[-1, 1, 0]), Ok(0));
        assert_eq!(brute_count(&magic(3, 3), &[1, 1, 1, -1, -1, -1]), Ok(6));
        assert_eq!(brute_count(&magic(2, 2), &[3, 3, -3, -3]), Ok(4));
        assert_eq!(brute_transportation(&[1, 1, 1], &[1, 1, 1]), 6);
        assert_eq!(brute_transportation(&[2, 2, 2], &[2, 2, 2]), 21);
        assert_eq!(brute_transportation(&[3, 3], &[3, 3]), 4);
    }

    #[test]
    fn ehrhart() {
        assert_eq!(brute_ehrhart(&a2(), &[1, 0, -1], 1), Ok(vec![q(1), q(1)]));
        assert_eq!(
            brute_ehrhart(&magic(2, 2), &[1, 1, -1, -1], 1),
            Ok(vec![q(1), q(1)])
        );
        assert_eq!(brute_ehrhart(&[vec![1, 1]], &[1, 1], 0), Ok(vec![q(1)]));
    }

    #[test]
    fn nbc_counts() {
        assert_eq!(brute_nbc_count(&a2()), 2);
        assert_eq!(brute_nbc_count(&magic(2, 2)), 3);
        assert_eq!(brute_nbc_count(&[vec![1, 0], vec![0, 1]]), 1);
    }

    #[test]
    fn no_form_for_cycle() {
        let cyc = vec![vec![-1, 1, 0], vec![0, -1, 1], vec![1, 0, -1]];
        assert_eq!(
            brute_count(&cyc, &[0, 0, 0]),
            Err(OracleError::NoPositiveForm)
        );
    }

    #[test]
    fn interpolation_exact() {
        let vals: Vec<Q> = (0..5).map(|t| q(t * t * t - 2 * t + 7)).collect();
        assert_eq!(interpolate(&vals), vec![q(7), q(-2), q(0), q(1)]);
    }
}
