//! Complete and irreducible subsets, non-broken-circuit bases, and the
//! canonical correspondences between n.b.c. bases, proper flags, and
//! proper maximal nested sets.

use crate::config::VectorConfig;
use crate::error::{Error, Result};
use crate::linalg::{self, Rational, Span};
use crate::subset::SubsetIdx;
use num_traits::{One, Zero};

/// `{α ∈ Δ : α ∈ span(s)}`.
pub fn span_closure(config: &VectorConfig, s: SubsetIdx) -> SubsetIdx {
    let span = config.span_of(s);
    (0..config.len())
        .filter(|&i| s.contains(i) || span.contains(config.rational(i)))
        .collect()
}

pub fn is_complete(config: &VectorConfig, s: SubsetIdx) -> bool {
    span_closure(config, s) == s
}

/// Splits a complete set into its irreducible components, ordered by their
/// smallest index.
///
/// Components are the connected components of the fundamental-circuit graph
/// with respect to a greedy basis of `s`: every element outside the basis is
/// joined to the basis elements with nonzero coefficient in its expansion.
pub fn irreducible_decomposition(config: &VectorConfig, s: SubsetIdx) -> Result<Vec<SubsetIdx>> {
    config.check_subset(s)?;
    if !is_complete(config, s) {
        return Err(Error::NotComplete);
    }
    Ok(components(config, s))
}

pub(crate) fn components(config: &VectorConfig, s: SubsetIdx) -> Vec<SubsetIdx> {
    let elems = s.to_vec();
    let mut span = Span::new(config.ambient_dim());
    let mut basis = Vec::new();
    let mut rest = Vec::new();
    for &i in &elems {
        if span.insert(config.rational(i)) {
            basis.push(i);
        } else {
            rest.push(i);
        }
    }
    let pos = |i: usize| elems.binary_search(&i).unwrap();
    let mut uf = UnionFind::new(elems.len());
    let basis_vecs: Vec<Vec<Rational>> =
        basis.iter().map(|&b| config.rational(b).to_vec()).collect();
    for &e in &rest {
        let coeffs = linalg::solve_coordinates(&basis_vecs, config.rational(e))
            .expect("element of s lies in span of its basis");
        for (b, c) in basis.iter().zip(&coeffs) {
            if !c.is_zero() {
                uf.union(pos(e), pos(*b));
            }
        }
    }
    let mut parts: Vec<SubsetIdx> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; elems.len()];
    for (k, &i) in elems.iter().enumerate() {
        let root = uf.find(k);
        match root_of[root] {
            Some(p) => parts[p].insert(i),
            None => {
                root_of[root] = Some(parts.len());
                parts.push(SubsetIdx::singleton(i));
            }
        }
    }
    parts
}

/// Complete, nonempty, and not a direct sum of two nonempty parts.
pub fn is_irreducible(config: &VectorConfig, s: SubsetIdx) -> bool {
    !s.is_empty() && is_complete(config, s) && components(config, s).len() == 1
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// An n.b.c. basis as strictly increasing positions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NbcBasis(pub Vec<usize>);

impl NbcBasis {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn as_subset(&self) -> SubsetIdx {
        self.0.iter().copied().collect()
    }
}

/// A strictly decreasing chain `A_1 ⊋ A_2 ⊋ … ⊋ A_r` of complete sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProperFlag(pub Vec<SubsetIdx>);

impl ProperFlag {
    pub fn sets(&self) -> &[SubsetIdx] {
        &self.0
    }
}

/// A family of irreducible sets, stored in canonical (size, lex) order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NestedSet(Vec<SubsetIdx>);

impl NestedSet {
    pub fn from_members(mut members: Vec<SubsetIdx>) -> Self {
        members.sort();
        members.dedup();
        NestedSet(members)
    }

    pub fn members(&self) -> &[SubsetIdx] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `φ(S)`: the minimum element of a member.
    pub fn phi(&self, member: usize) -> usize {
        self.0[member].min_index().expect("members are nonempty")
    }

    /// The minima of all members, sorted increasingly.
    pub fn minima(&self) -> Vec<usize> {
        let mut m: Vec<usize> = (0..self.len()).map(|k| self.phi(k)).collect();
        m.sort_unstable();
        m
    }

    /// Union of all members.
    pub fn support(&self) -> SubsetIdx {
        self.0.iter().fold(SubsetIdx::EMPTY, |acc, s| acc.union(*s))
    }
}

/// Checks the non-broken-circuit condition: each `basis[l]` is the minimum of
/// `Δ ∩ span(basis[l..])`.
pub fn is_nbc(config: &VectorConfig, basis: &[usize]) -> Result<bool> {
    if let Some(&i) = basis.iter().find(|&&i| i >= config.len()) {
        return Err(Error::IndexOutOfRange(i));
    }
    if basis.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Unsorted);
    }
    let mut span = Span::new(config.ambient_dim());
    for &i in basis.iter().rev() {
        if !span.insert(config.rational(i)) {
            return Err(Error::Dependent);
        }
    }
    let mut span = Span::new(config.ambient_dim());
    for &i in basis.iter().rev() {
        span.insert(config.rational(i));
        if (0..i).any(|j| span.contains(config.rational(j))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All n.b.c. bases of the span, in lexicographic order.
pub fn nbc_bases(config: &VectorConfig) -> Vec<NbcBasis> {
    let mut out = Vec::new();
    let mut tail = Vec::with_capacity(config.rank());
    nbc_extend(
        config,
        &mut tail,
        &Span::new(config.ambient_dim()),
        &mut out,
    );
    out.sort();
    out
}

fn nbc_extend(config: &VectorConfig, tail: &mut Vec<usize>, span: &Span, out: &mut Vec<NbcBasis>) {
    let need = config.rank() - tail.len();
    if need == 0 {
        let mut b = tail.clone();
        b.reverse();
        out.push(NbcBasis(b));
        return;
    }
    let upper = tail.last().copied().unwrap_or(config.len());
    for i in (need - 1..upper).rev() {
        let v = config.rational(i);
        if span.contains(v) {
            continue;
        }
        let mut next = span.clone();
        next.insert(v);
        if (0..i).any(|j| next.contains(config.rational(j))) {
            continue;
        }
        tail.push(i);
        nbc_extend(config, tail, &next, out);
        tail.pop();
    }
}

fn check_increasing_basis(config: &VectorConfig, basis: &[usize]) -> Result<()> {
    if let Some(&i) = basis.iter().find(|&&i| i >= config.len()) {
        return Err(Error::IndexOutOfRange(i));
    }
    if basis.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Unsorted);
    }
    let s: SubsetIdx = basis.iter().copied().collect();
    if basis.len() != config.rank() || config.rank_of(s) != config.rank() {
        return Err(Error::Dependent);
    }
    Ok(())
}

/// `A_i = Δ ∩ span(γ_i, …, γ_r)` for an increasing basis `γ`.
pub fn flag_of_basis(config: &VectorConfig, basis: &[usize]) -> Result<ProperFlag> {
    check_increasing_basis(config, basis)?;
    let sets = (0..basis.len())
        .map(|i| span_closure(config, basis[i..].iter().copied().collect()))
        .collect();
    Ok(ProperFlag(sets))
}

/// Irreducible components of all flag members, de-duplicated.
pub fn nested_of_flag(config: &VectorConfig, flag: &ProperFlag) -> NestedSet {
    let members = flag
        .sets()
        .iter()
        .flat_map(|&a| components(config, a))
        .collect();
    NestedSet::from_members(members)
}

/// The minima `φ(M)` in increasing (flag) order; fails if they do not form
/// a basis of the span.
pub fn basis_of_nested(config: &VectorConfig, nested: &NestedSet) -> Result<Vec<usize>> {
    let minima = nested.minima();
    let distinct = minima.windows(2).all(|w| w[0] < w[1]);
    let s: SubsetIdx = minima.iter().copied().collect();
    if !distinct || minima.len() != config.rank() || config.rank_of(s) != config.rank() {
        return Err(Error::NotProper);
    }
    Ok(minima)
}

/// Checks the nested-set axiom directly: every antichain of members has a
/// complete union whose irreducible components are exactly that antichain.
/// Exponential in the number of members.
pub fn is_nested(config: &VectorConfig, members: &[SubsetIdx]) -> bool {
    if !members.iter().all(|&s| is_irreducible(config, s)) {
        return false;
    }
    let k = members.len();
    assert!(k < 32);
    for mask in 1u32..(1 << k) {
        let chosen: Vec<SubsetIdx> = (0..k)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| members[i])
            .collect();
        let antichain = chosen.iter().enumerate().all(|(i, a)| {
            chosen
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.is_subset(*b))
        });
        if !antichain {
            continue;
        }
        let union = chosen.iter().fold(SubsetIdx::EMPTY, |acc, s| acc.union(*s));
        if !is_complete(config, union) {
            return false;
        }
        let mut comps = components(config, union);
        let mut expect = chosen;
        comps.sort();
        expect.sort();
        if comps != expect {
            return false;
        }
    }
    true
}

/// Every independent subset spans a direct summand of the ambient lattice.
///
/// Independent subsets extend to bases of the span, and a subset of a basis
/// of a saturated lattice is itself saturated, so it suffices that every
/// basis has gcd of maximal minors equal to 1.
pub fn is_unimodular(config: &VectorConfig) -> bool {
    let r = config.rank();
    linalg::combinations(config.len(), r)
        .into_iter()
        .all(|idx| {
            let s: SubsetIdx = idx.iter().copied().collect();
            if config.rank_of(s) < r {
                return true;
            }
            let rows: Vec<Vec<i64>> = idx.iter().map(|&i| config.vector(i).to_vec()).collect();
            linalg::gcd_maximal_minors(&rows).is_one()
        })
}

/// Exact coordinates of `target` in the basis given by positions `basis`.
pub fn cone_coordinates(
    config: &VectorConfig,
    basis: &[usize],
    target: &[Rational],
) -> Result<Vec<Rational>> {
    if let Some(&i) = basis.iter().find(|&&i| i >= config.len()) {
        return Err(Error::IndexOutOfRange(i));
    }
    if target.len() != config.ambient_dim() {
        return Err(Error::DimensionMismatch {
            index: 0,
            found: target.len(),
            expected: config.ambient_dim(),
        });
    }
    let s: SubsetIdx = basis.iter().copied().collect();
    if s.len() != basis.len() || config.rank_of(s) != basis.len() {
        return Err(Error::Dependent);
    }
    let vecs: Vec<Vec<Rational>> = basis.iter().map(|&i| config.rational(i).to_vec()).collect();
    linalg::solve_coordinates(&vecs, target).ok_or(Error::OutsideSpan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, to_rational};

    pub(crate) fn a2() -> VectorConfig {
        VectorConfig::new(3, vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]).unwrap()
    }

    /// (i|j) = e_i - f_j, lexicographic.
    fn magic(m: usize, n: usize) -> VectorConfig {
        let mut vs = Vec::new();
        for i in 0..m {
            for j in 0..n {
                let mut v = vec![0; m + n];
                v[i] = 1;
                v[m + j] = -1;
                vs.push(v);
            }
        }
        VectorConfig::new(m + n, vs).unwrap()
    }

    fn set(v: &[usize]) -> SubsetIdx {
        v.iter().copied().collect()
    }

    /// Brute-force decomposition: finest partition with additive rank.
    fn brute_components(config: &VectorConfig, s: SubsetIdx) -> Vec<SubsetIdx> {
        let total = config.rank_of(s);
        let Some(first) = s.min_index() else {
            return vec![];
        };
        // smallest part containing `first` that splits off with additive rank
        let rest = s.difference(SubsetIdx::singleton(first));
        let mut best: Option<SubsetIdx> = None;
        for extra in rest.subsets() {
            let part = extra.with(first);
            let other = s.difference(part);
            if config.rank_of(part) + config.rank_of(other) == total
                && best.is_none_or(|b| part.len() < b.len())
            {
                best = Some(part);
            }
        }
        let part = best.unwrap();
        let mut out = vec![part];
        out.extend(brute_components(config, s.difference(part)));
        out
    }

    #[test]
    fn closure_examples() {
        let m22 = magic(2, 2);
        // (1|1),(1|2),(2|1) -> little square
        assert_eq!(span_closure(&m22, set(&[0, 1, 2])), set(&[0, 1, 2, 3]));
        for i in 0..4 {
            assert_eq!(
                span_closure(&m22, SubsetIdx::singleton(i)),
                SubsetIdx::singleton(i)
            );
        }
        let a = a2();
        assert_eq!(span_closure(&a, set(&[0, 1])), set(&[0, 1, 2]));
        assert_eq!(span_closure(&a, SubsetIdx::EMPTY), SubsetIdx::EMPTY);
    }

    #[test]
    fn decomposition_examples() {
        let m33 = magic(3, 3);
        // {1,2}x{1,2} ∪ {(3|3)}: positions 0,1,3,4 and 8
        let s = set(&[0, 1, 3, 4, 8]);
        assert_eq!(
            irreducible_decomposition(&m33, s).unwrap(),
            vec![set(&[0, 1, 3, 4]), set(&[8])]
        );
        let a = a2();
        assert_eq!(
            irreducible_decomposition(&a, a.all()).unwrap(),
            vec![a.all()]
        );
        // path a->b->c
        let path = VectorConfig::new(3, vec![vec![-1, 1, 0], vec![0, -1, 1]]).unwrap();
        assert_eq!(
            irreducible_decomposition(&path, path.all()).unwrap(),
            vec![set(&[0]), set(&[1])]
        );
        assert_eq!(
            irreducible_decomposition(&a, set(&[0, 1])),
            Err(Error::NotComplete)
        );
        assert!(irreducible_decomposition(&a, SubsetIdx::EMPTY)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn decomposition_matches_brute_force() {
        for config in [magic(2, 3), magic(3, 3), a2()] {
            for s in config.all().subsets() {
                if s.len() > 8 || !is_complete(&config, s) {
                    continue;
                }
                let mut fast = components(&config, s);
                let mut slow = brute_components(&config, s);
                fast.sort();
                slow.sort();
                assert_eq!(fast, slow, "subset {s}");
            }
        }
    }

    #[test]
    fn nbc_examples() {
        let a = a2();
        assert_eq!(is_nbc(&a, &[0, 1]), Ok(true));
        assert_eq!(is_nbc(&a, &[1, 2]), Ok(false));
        assert_eq!(is_nbc(&a, &[0, 2]), Ok(true));
        let dep = VectorConfig::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(is_nbc(&dep, &[0, 1, 2]), Err(Error::Dependent));
        assert_eq!(is_nbc(&dep, &[1, 0]), Err(Error::Unsorted));
        let one = VectorConfig::new(2, vec![vec![1, 1]]).unwrap();
        assert_eq!(is_nbc(&one, &[0]), Ok(true));

        assert_eq!(
            nbc_bases(&a),
            vec![NbcBasis(vec![0, 1]), NbcBasis(vec![0, 2])]
        );
        assert_eq!(
            nbc_bases(&magic(2, 2)),
            vec![
                NbcBasis(vec![0, 1, 2]),
                NbcBasis(vec![0, 1, 3]),
                NbcBasis(vec![0, 2, 3])
            ]
        );
        let indep =
            VectorConfig::new(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(nbc_bases(&indep), vec![NbcBasis(vec![0, 1, 2])]);
    }

    #[test]
    fn nbc_enumeration_matches_filter() {
        for config in [magic(2, 3), magic(3, 3), a2()] {
            let r = config.rank();
            let filtered: Vec<NbcBasis> = linalg::combinations(config.len(), r)
                .into_iter()
                .filter(|b| config.rank_of(b.iter().copied().collect()) == r)
                .filter(|b| is_nbc(&config, b).unwrap())
                .map(NbcBasis)
                .collect();
            assert_eq!(nbc_bases(&config), filtered);
        }
    }

    #[test]
    fn bijection_a2() {
        let a = a2();
        let flag = flag_of_basis(&a, &[0, 2]).unwrap();
        assert_eq!(flag.sets(), &[a.all(), set(&[2])]);
        let nested = nested_of_flag(&a, &flag);
        assert_eq!(nested.members(), &[set(&[2]), a.all()]);
        assert_eq!(basis_of_nested(&a, &nested).unwrap(), vec![0, 2]);
        assert!(is_nested(&a, nested.members()));

        let one = VectorConfig::new(1, vec![vec![1]]).unwrap();
        let f = flag_of_basis(&one, &[0]).unwrap();
        assert_eq!(f.sets().len(), 1);
        assert_eq!(
            basis_of_nested(&one, &nested_of_flag(&one, &f)).unwrap(),
            vec![0]
        );
    }

    #[test]
    fn non_proper_nested_rejected() {
        // nested set {Δ, {e2-e3}} has minima {0, 1}: proper. {Δ, {e1-e2}} has
        // minima {0, 0}: not proper.
        let a = a2();
        let bad = NestedSet::from_members(vec![a.all(), set(&[0])]);
        assert_eq!(basis_of_nested(&a, &bad), Err(Error::NotProper));
    }

    #[test]
    fn unimodularity() {
        assert!(is_unimodular(&a2()));
        assert!(is_unimodular(&magic(3, 3)));
        let two = VectorConfig::new(1, vec![vec![2]]).unwrap();
        assert!(!is_unimodular(&two));
        let bad = VectorConfig::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 2]]).unwrap();
        assert!(!is_unimodular(&bad));
    }

    #[test]
    fn coordinates() {
        let a = a2();
        assert_eq!(
            cone_coordinates(&a, &[0, 1], &to_rational(&[1, 0, -1])).unwrap(),
            vec![rat(1), rat(1)]
        );
        assert_eq!(
            cone_coordinates(&a, &[0, 2], &to_rational(&[0, 1, -1])).unwrap(),
            vec![rat(-1), rat(1)]
        );
        assert_eq!(
            cone_coordinates(&a, &[0, 2], &to_rational(&[0, 0, 0])).unwrap(),
            vec![rat(0), rat(0)]
        );
        assert_eq!(
            cone_coordinates(&a, &[0, 2], &to_rational(&[1, 0, 0])),
            Err(Error::OutsideSpan)
        );
    }
}
