//! Residues at the points at infinity `P_M` and the counting, volume and
//! Ehrhart formulas built from them.
//!
//! For a proper maximal nested set `M` with members `S`, set
//! `y_S = ⟨φ(S), x⟩ = Π_{S' ⊇ S} z_{S'}`. Each `⟨α_k, x⟩` factors as the
//! monomial `Π_{S ⊇ B_k} z_S` times a unit `g_k`, where `B_k` is the smallest
//! member containing `α_k`. The residue is then a single coefficient of an
//! exact truncated series.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arrangement::{self, NestedSet};
use crate::chamber::{self, ChamberCertificate, ChamberPolicy};
use crate::config::VectorConfig;
use crate::error::{Error, Result};
use crate::graph::{self, OrientedGraph};
use crate::linalg::{to_rational, BasisSolver, Rational};
use crate::nested::{self, Backend, EnumerationRequest};
use crate::par;
use crate::series::{
    exp_coefficients, product_coefficient, todd_coefficients, Exponent, Poly, TruncatedSeries,
};
use crate::subset::SubsetIdx;

/// The coordinates `z_S` attached to a nested set.
#[derive(Clone, Debug)]
pub struct MonomialChange {
    members: Vec<SubsetIdx>,
    /// `substitution[i]` is the exponent vector of `y_{S_i}`.
    substitution: Vec<Exponent>,
    /// `c(S) - 1`
    jacobian: Vec<u32>,
}

impl MonomialChange {
    pub fn new(m: &NestedSet) -> Self {
        let members = m.members().to_vec();
        let substitution = members
            .iter()
            .map(|s| members.iter().map(|t| u32::from(s.is_subset(*t))).collect())
            .collect();
        let jacobian = members
            .iter()
            .map(|s| members.iter().filter(|t| t.is_subset(*s)).count() as u32 - 1)
            .collect();
        MonomialChange {
            members,
            substitution,
            jacobian,
        }
    }

    pub fn members(&self) -> &[SubsetIdx] {
        &self.members
    }

    pub fn substitution(&self, member: usize) -> &[u32] {
        &self.substitution[member]
    }

    pub fn jacobian_exponents(&self) -> &[u32] {
        &self.jacobian
    }
}

/// Coordinates of a vector in the basis `φ(M)`, together with the smallest
/// member whose span contains it.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisExpansion {
    pub member: usize,
    pub coeffs: Vec<Rational>,
}

struct Chart {
    change: MonomialChange,
    solver: BasisSolver,
    spans: Vec<crate::linalg::Span>,
}

impl Chart {
    fn new(config: &VectorConfig, m: &NestedSet) -> Result<Self> {
        let basis: Vec<Vec<Rational>> = m
            .minima()
            .iter()
            .map(|&i| config.rational(i).to_vec())
            .collect();
        // minima() is sorted by index; reorder to member order
        let phi: Vec<Vec<Rational>> = (0..m.len())
            .map(|i| config.rational(m.phi(i)).to_vec())
            .collect();
        debug_assert_eq!(basis.len(), phi.len());
        let solver = BasisSolver::new(phi).ok_or(Error::NotProper)?;
        let spans = m.members().iter().map(|&s| config.span_of(s)).collect();
        Ok(Chart {
            change: MonomialChange::new(m),
            solver,
            spans,
        })
    }

    fn expand(&self, alpha: &[Rational]) -> Result<BasisExpansion> {
        let coeffs = self.solver.coordinates(alpha).ok_or(Error::OutsideSpan)?;
        let member = self
            .spans
            .iter()
            .position(|sp| sp.contains(alpha))
            .ok_or(Error::OutsideSpan)?;
        let b = self.change.members[member];
        let supported = coeffs
            .iter()
            .zip(&self.change.members)
            .all(|(c, s)| c.is_zero() || s.is_subset(b));
        if !supported || coeffs[member].is_zero() {
            return Err(Error::Inconsistent(format!(
                "expansion of {alpha:?} leaves its member"
            )));
        }
        Ok(BasisExpansion { member, coeffs })
    }
}

/// Expansion of `alpha` in the basis `φ(M)`.
pub fn basis_expansion(
    config: &VectorConfig,
    m: &NestedSet,
    alpha: &[Rational],
) -> Result<BasisExpansion> {
    if alpha.len() != config.ambient_dim() {
        return Err(Error::DimensionMismatch {
            index: 0,
            found: alpha.len(),
            expected: config.ambient_dim(),
        });
    }
    Chart::new(config, m)?.expand(alpha)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Integrand {
    /// `e^{⟨a,x⟩} / Π (1 - e^{-⟨α,x⟩})`
    Count,
    /// `e^{⟨a,x⟩} / Π ⟨α,x⟩`
    Volume,
}

/// Residue at `P_M` of the dilated integrand, as a polynomial in `t`
/// (the target replaced by `t·a`). `extra` enlarges every truncation bound.
fn residue_poly(
    config: &VectorConfig,
    m: &NestedSet,
    a: &[Rational],
    kind: Integrand,
    extra: u32,
) -> Result<Poly> {
    let chart = Chart::new(config, m)?;
    let r = m.len();
    let expansions: Vec<BasisExpansion> = (0..config.len())
        .map(|k| chart.expand(config.rational(k)))
        .collect::<Result<_>>()?;
    let target = chart.solver.coordinates(a).ok_or(Error::OutsideSpan)?;
    let members = &chart.change.members;

    // d(S) = e(S) - c(S)
    let degree: Vec<u32> = (0..r)
        .map(|i| {
            let e = expansions
                .iter()
                .filter(|x| members[x.member].is_subset(members[i]))
                .count() as u32;
            e - chart.change.jacobian[i] - 1
        })
        .collect();
    let bounds: Exponent = degree.iter().map(|d| d + extra).collect();
    let total: usize = bounds.iter().sum::<u32>() as usize;

    let todd = todd_coefficients(total);
    let mut product = TruncatedSeries::constant(bounds.clone(), Rational::one());
    for x in &expansions {
        let top = chart.change.substitution(x.member);
        let mut g = TruncatedSeries::zero(bounds.clone());
        for (i, c) in x.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e: Exponent = chart
                    .change
                    .substitution(i)
                    .iter()
                    .zip(top)
                    .map(|(p, q)| p - q)
                    .collect();
                g.add_term(e, c.clone());
            }
        }
        let mut factor = g
            .inverse()
            .ok_or_else(|| Error::Inconsistent("unit has zero constant term".into()))?;
        if kind == Integrand::Count {
            let mut l = TruncatedSeries::zero(bounds.clone());
            for (e, c) in g.terms() {
                l.add_term(e.iter().zip(top).map(|(p, q)| p + q).collect(), c.clone());
            }
            factor = factor.mul(&l.compose(&todd));
        }
        product = product.mul(&factor);
    }

    let mut exponent = TruncatedSeries::zero(bounds.clone());
    for (i, c) in target.iter().enumerate() {
        exponent.add_term(chart.change.substitution(i).to_vec(), c.clone());
    }
    let max_power = degree.iter().sum::<u32>() as usize;
    let fact = exp_coefficients(max_power);
    let mut power = TruncatedSeries::constant(bounds, Rational::one());
    let mut coeffs = Vec::with_capacity(max_power + 1);
    for f in fact.iter() {
        coeffs.push(product_coefficient(&product, &power, &degree) * f);
        power = power.mul(&exponent);
    }
    Ok(Poly::new(coeffs))
}

/// One summand of a residue formula.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueTerm<V> {
    pub nested: NestedSet,
    /// `φ(M)` in member order.
    pub basis: Vec<usize>,
    pub value: V,
}

/// Where a target sits relative to the big cells.
#[derive(Clone, Debug, PartialEq)]
pub enum Selection {
    /// The target is zero.
    Apex,
    /// The target is outside the closed cone.
    Outside,
    Cell {
        certificate: ChamberCertificate,
        adapted: Vec<NestedSet>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountResult {
    pub total: BigInt,
    pub terms: Vec<ResidueTerm<Rational>>,
    pub chamber: Option<ChamberCertificate>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VolumeResult {
    pub total: Rational,
    pub terms: Vec<ResidueTerm<Rational>>,
    pub chamber: Option<ChamberCertificate>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EhrhartResult {
    pub polynomial: Poly,
    pub terms: Vec<ResidueTerm<Poly>>,
    pub chamber: Option<ChamberCertificate>,
}

/// Counting engine for a fixed ordered configuration.
#[derive(Clone, Debug)]
pub struct Engine {
    config: VectorConfig,
    graph: Option<OrientedGraph>,
    backend: Backend,
    policy: ChamberPolicy,
    extra: u32,
}

impl Engine {
    /// Requires a unimodular configuration spanning an acute cone.
    pub fn for_config(config: VectorConfig) -> Result<Self> {
        if config.positive_form().is_none() {
            return Err(Error::NotAcute);
        }
        if !arrangement::is_unimodular(&config) {
            return Err(Error::NotUnimodular);
        }
        Ok(Engine {
            config,
            graph: None,
            backend: Backend::Generic,
            policy: ChamberPolicy::Canonical,
            extra: 0,
        })
    }

    /// Requires a network (no oriented cycles). Uses the graph backend.
    pub fn for_graph(g: OrientedGraph) -> Result<Self> {
        if graph::is_network(&g).is_none() {
            return Err(Error::NotAcute);
        }
        let config = graph::incidence_config(&g)?;
        Ok(Engine {
            config,
            graph: Some(g),
            backend: Backend::GraphRecursive,
            policy: ChamberPolicy::Canonical,
            extra: 0,
        })
    }

    pub fn with_backend(mut self, backend: Backend) -> Self {
        self.backend = backend;
        self
    }

    pub fn with_policy(mut self, policy: ChamberPolicy) -> Self {
        self.policy = policy;
        self
    }

    /// Enlarges every truncation bound; the results must not change.
    pub fn with_extra_truncation(mut self, extra: u32) -> Self {
        self.extra = extra;
        self
    }

    pub fn config(&self) -> &VectorConfig {
        &self.config
    }

    pub fn graph(&self) -> Option<&OrientedGraph> {
        self.graph.as_ref()
    }

    pub fn select_chamber(&self, a: &[i64]) -> Result<Selection> {
        let a = to_rational(a);
        if !chamber::in_closed_cone(&self.config, &a)? {
            return Ok(Selection::Outside);
        }
        if a.iter().all(Zero::is_zero) {
            return Ok(Selection::Apex);
        }
        let certificate = ChamberCertificate::new(&self.config, a, &self.policy)?;
        let req = EnumerationRequest {
            config: &self.config,
            graph: self.graph.as_ref(),
            chamber: Some(&certificate),
            backend: if self.graph.is_some() {
                self.backend
            } else {
                Backend::Generic
            },
        };
        let adapted = nested::enumerate(&req)?;
        if adapted.is_empty() {
            return Err(Error::ChamberOutsideCone);
        }
        Ok(Selection::Cell {
            certificate,
            adapted,
        })
    }

    fn terms(&self, a: &[i64], kind: Integrand) -> Result<(Selection, Vec<ResidueTerm<Poly>>)> {
        let sel = self.select_chamber(a)?;
        let terms = match &sel {
            Selection::Cell { adapted, .. } => {
                let target = to_rational(a);
                par::map(adapted, |m| {
                    residue_poly(&self.config, m, &target, kind, self.extra).map(|value| {
                        ResidueTerm {
                            nested: m.clone(),
                            basis: (0..m.len()).map(|i| m.phi(i)).collect(),
                            value,
                        }
                    })
                })
                .into_iter()
                .collect::<Result<_>>()?
            }
            _ => Vec::new(),
        };
        Ok((sel, terms))
    }

    /// Number of non-negative integer solutions of `Σ n_k α_k = a`.
    pub fn count(&self, a: &[i64]) -> Result<CountResult> {
        let (sel, terms) = self.terms(a, Integrand::Count)?;
        let one = Rational::one();
        let terms: Vec<ResidueTerm<Rational>> = terms
            .into_iter()
            .map(|t| ResidueTerm {
                value: t.value.eval(&one),
                nested: t.nested,
                basis: t.basis,
            })
            .collect();
        let total = match sel {
            Selection::Apex => Rational::one(),
            _ => terms.iter().map(|t| &t.value).sum(),
        };
        if !total.is_integer() || total.is_negative() {
            return Err(Error::Inconsistent(format!(
                "count {total} is not a non-negative integer"
            )));
        }
        Ok(CountResult {
            total: total.to_integer(),
            terms,
            chamber: certificate(sel),
        })
    }

    /// Lattice-normalized volume of the polytope `Π_a`.
    pub fn volume(&self, a: &[i64]) -> Result<VolumeResult> {
        let (sel, terms) = self.terms(a, Integrand::Volume)?;
        let one = Rational::one();
        let terms: Vec<ResidueTerm<Rational>> = terms
            .into_iter()
            .map(|t| ResidueTerm {
                value: t.value.eval(&one),
                nested: t.nested,
                basis: t.basis,
            })
            .collect();
        let total = match sel {
            Selection::Apex if self.config.len() == self.config.rank() => Rational::one(),
            _ => terms.iter().map(|t| &t.value).sum(),
        };
        Ok(VolumeResult {
            total,
            terms,
            chamber: certificate(sel),
        })
    }

    /// The polynomial `p` with `p(t) = N_{ta}` for integers `t ≥ 0`.
    pub fn ehrhart(&self, a: &[i64]) -> Result<EhrhartResult> {
        let (sel, terms) = self.terms(a, Integrand::Count)?;
        let polynomial = match sel {
            Selection::Outside => return Err(Error::OutsideCone),
            Selection::Apex => Poly::constant(Rational::one()),
            Selection::Cell { .. } => terms
                .iter()
                .fold(Poly::default(), |acc, t| acc.add(&t.value)),
        };
        Ok(EhrhartResult {
            polynomial,
            terms,
            chamber: certificate(sel),
        })
    }
}

fn certificate(sel: Selection) -> Option<ChamberCertificate> {
    match sel {
        Selection::Cell { certificate, .. } => Some(certificate),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn a2() -> VectorConfig {
        VectorConfig::new(3, vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]).unwrap()
    }

    fn magic(m: usize, n: usize) -> VectorConfig {
        let mut v = Vec::new();
        for i in 0..m {
            for j in 0..n {
                let mut x = vec![0; m + n];
                x[i] = 1;
                x[m + j] = -1;
                v.push(x);
            }
        }
        VectorConfig::new(m + n, v).unwrap()
    }

    fn margins(m: usize, n: usize, r: i64, c: i64) -> Vec<i64> {
        let mut a = vec![r; m];
        a.extend(vec![-c; n]);
        a
    }

    #[test]
    fn monomial_change_a2() {
        let c = a2();
        let m = NestedSet::from_members(vec![SubsetIdx::singleton(2), c.all()]);
        let ch = MonomialChange::new(&m);
        assert_eq!(ch.substitution(0), &[1, 1]);
        assert_eq!(ch.substitution(1), &[0, 1]);
        assert_eq!(ch.jacobian_exponents(), &[0, 1]);
    }

    #[test]
    fn expansion_a2() {
        let c = a2();
        let m = NestedSet::from_members(vec![SubsetIdx::singleton(2), c.all()]);
        // members in order: {e1-e3}, Δ with φ = e1-e2
        let x = basis_expansion(&c, &m, c.rational(1)).unwrap();
        assert_eq!(x.member, 1);
        assert_eq!(x.coeffs, vec![rat(1), rat(-1)]);
        let y = basis_expansion(&c, &m, c.rational(2)).unwrap();
        assert_eq!((y.member, y.coeffs), (0, vec![rat(1), rat(0)]));
        assert_eq!(
            basis_expansion(&c, &m, &[rat(1), rat(0), rat(0)]),
            Err(Error::OutsideSpan)
        );
    }

    #[test]
    fn kostant_a2() {
        let e = Engine::for_config(a2()).unwrap();
        assert_eq!(e.count(&[1, 0, -1]).unwrap().total, BigInt::from(2));
        assert_eq!(e.count(&[3, 0, -3]).unwrap().total, BigInt::from(4));
        assert_eq!(e.count(&[-1, 1, 0]).unwrap().total, BigInt::from(0));
        assert_eq!(e.count(&[0, 0, 0]).unwrap().total, BigInt::from(1));
        assert_eq!(
            e.ehrhart(&[1, 0, -1]).unwrap().polynomial.to_string(),
            "t + 1"
        );
        assert_eq!(e.volume(&[1, 0, -1]).unwrap().total, rat(1));
    }

    #[test]
    fn both_wall_chambers_agree() {
        let wall = Engine::for_config(a2())
            .unwrap()
            .with_policy(ChamberPolicy::Toward(vec![to_rational(&[0, 1, -1])]));
        let r = wall.count(&[1, 0, -1]).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.terms[0].basis, vec![1, 0]);
        assert_eq!(r.total, BigInt::from(2));
        assert_eq!(
            wall.ehrhart(&[1, 0, -1]).unwrap().polynomial.to_string(),
            "t + 1"
        );
        let canon = Engine::for_config(a2())
            .unwrap()
            .count(&[1, 0, -1])
            .unwrap();
        assert_eq!(canon.terms.len(), 2);
        let off = Engine::for_config(a2())
            .unwrap()
            .with_policy(ChamberPolicy::Toward(vec![to_rational(&[0, -1, 1])]));
        // e1 - e2 spans a boundary ray; this direction points out of the cone
        assert_eq!(off.count(&[1, -1, 0]), Err(Error::ChamberOutsideCone));
    }

    #[test]
    fn transportation_counts() {
        let e = Engine::for_config(magic(2, 2)).unwrap();
        assert_eq!(
            e.count(&margins(2, 2, 3, 3)).unwrap().total,
            BigInt::from(4)
        );
        assert_eq!(
            e.ehrhart(&margins(2, 2, 1, 1))
                .unwrap()
                .polynomial
                .to_string(),
            "t + 1"
        );
        assert_eq!(e.volume(&margins(2, 2, 1, 1)).unwrap().total, rat(1));
        let e = Engine::for_config(magic(3, 3)).unwrap();
        assert_eq!(
            e.count(&margins(3, 3, 2, 2)).unwrap().total,
            BigInt::from(21)
        );
        let p = e.ehrhart(&margins(3, 3, 1, 1)).unwrap().polynomial;
        assert_eq!(p.degree(), Some(4));
        assert_eq!(p.eval(&rat(1)), rat(6));
        assert_eq!(p.eval(&rat(2)), rat(21));
        assert_eq!(e.volume(&margins(3, 3, 1, 1)).unwrap().total, p.leading());
        assert_eq!(p.leading(), Rational::new(1.into(), 8.into()));
    }

    #[test]
    fn preconditions() {
        let cyc = VectorConfig::new(2, vec![vec![1, 0], vec![-1, 0], vec![0, 1]]);
        // (1,0) and (-1,0) are proportional: rejected at construction
        assert!(cyc.is_err());
        let not_acute = VectorConfig::new(2, vec![vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
        assert_eq!(Engine::for_config(not_acute).err(), Some(Error::NotAcute));
        let fat = VectorConfig::new(2, vec![vec![1, 0], vec![1, 2]]).unwrap();
        assert_eq!(Engine::for_config(fat).err(), Some(Error::NotUnimodular));
        let loop3 = OrientedGraph::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![(0, 1), (1, 2), (2, 0)],
        )
        .unwrap();
        assert_eq!(Engine::for_graph(loop3).err(), Some(Error::NotAcute));
        let e = Engine::for_config(a2()).unwrap();
        assert_eq!(e.count(&[1, 0, 0]), Err(Error::OutsideSpan));
        assert_eq!(e.ehrhart(&[-1, 0, 1]), Err(Error::OutsideCone));
    }

    #[test]
    fn graph_engine_matches_generic() {
        let g = OrientedGraph::complete(4);
        let ge = Engine::for_graph(g.clone()).unwrap();
        let ce = Engine::for_config(graph::incidence_config(&g).unwrap()).unwrap();
        for a in [[-3, 1, 0, 2], [-2, -1, 1, 2], [-1, 0, 0, 1]] {
            assert_eq!(ge.count(&a).unwrap().terms, ce.count(&a).unwrap().terms);
        }
    }
}
