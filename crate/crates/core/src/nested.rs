//! Enumeration of proper maximal nested sets, optionally restricted to the
//! ones adapted to a target (those whose cone contains the chosen big cell).
//!
//! Two backends produce identical, canonically sorted output:
//! - `Generic` maps every n.b.c. basis through its flag to a nested set;
//! - `GraphRecursive` works on a graph arrangement directly. Each irreducible
//!   (2-connected) piece contributes itself plus a recursive choice of a
//!   maximal complete subgraph avoiding its minimal edge: either one endpoint
//!   of that edge is deleted, or a simple disconnecting set through it is
//!   removed. Targets are carried along as vertex functions and pruned by the
//!   sign of the flow across the split.

use num_traits::Zero;

use crate::arrangement::{self, NestedSet};
use crate::chamber::{lex_positive, ChamberCertificate};
use crate::config::VectorConfig;
use crate::error::{Error, Result};
use crate::graph::{self, OrientedGraph};
use crate::linalg::{BasisSolver, Rational};
use crate::par;
use crate::subset::SubsetIdx;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Generic,
    GraphRecursive,
}

/// What to enumerate. The configuration's vector order is the arrangement
/// order; when `graph` is given its edges must be in the same order.
#[derive(Clone, Copy, Debug)]
pub struct EnumerationRequest<'a> {
    pub config: &'a VectorConfig,
    pub graph: Option<&'a OrientedGraph>,
    pub chamber: Option<&'a ChamberCertificate>,
    pub backend: Backend,
}

impl<'a> EnumerationRequest<'a> {
    pub fn generic(config: &'a VectorConfig) -> Self {
        EnumerationRequest {
            config,
            graph: None,
            chamber: None,
            backend: Backend::Generic,
        }
    }

    pub fn graph(config: &'a VectorConfig, graph: &'a OrientedGraph) -> Self {
        EnumerationRequest {
            config,
            graph: Some(graph),
            chamber: None,
            backend: Backend::GraphRecursive,
        }
    }

    pub fn adapted_to(self, chamber: &'a ChamberCertificate) -> Self {
        EnumerationRequest {
            chamber: Some(chamber),
            ..self
        }
    }
}

/// All proper maximal nested sets (or the adapted ones, when the request
/// carries a chamber), sorted canonically.
pub fn enumerate(req: &EnumerationRequest<'_>) -> Result<Vec<NestedSet>> {
    if let Some(ch) = req.chamber {
        if ch.base.len() != req.config.ambient_dim() || !req.config.span().contains(&ch.base) {
            return Err(Error::OutsideSpan);
        }
    }
    match req.backend {
        Backend::Generic => Ok(match req.chamber {
            None => enumerate_proper_nested(req.config),
            Some(ch) => adapted_generic(req.config, ch),
        }),
        Backend::GraphRecursive => {
            let g = req
                .graph
                .ok_or_else(|| Error::InvalidGraph("graph backend needs a graph".into()))?;
            if g.num_edges() != req.config.len() {
                return Err(Error::InvalidGraph(
                    "graph does not match configuration".into(),
                ));
            }
            Ok(match req.chamber {
                None => enumerate_proper_nested_graph(g),
                Some(ch) => adapted_graph(g, ch),
            })
        }
    }
}

/// Generic backend: n.b.c. basis -> flag -> nested set.
pub fn enumerate_proper_nested(config: &VectorConfig) -> Vec<NestedSet> {
    let bases = arrangement::nbc_bases(config);
    let mut out: Vec<NestedSet> = par::map(&bases, |b| {
        let flag = arrangement::flag_of_basis(config, b.indices()).expect("n.b.c. bases are bases");
        arrangement::nested_of_flag(config, &flag)
    });
    out.sort();
    out
}

fn adapted_generic(config: &VectorConfig, chamber: &ChamberCertificate) -> Vec<NestedSet> {
    let all = enumerate_proper_nested(config);
    let keep = par::map(&all, |m| {
        let basis = arrangement::basis_of_nested(config, m).expect("enumerated sets are proper");
        let solver = BasisSolver::new(basis.iter().map(|&i| config.rational(i).to_vec()).collect())
            .expect("proper nested sets give bases");
        chamber.in_open_cone(&solver).unwrap_or(false)
    });
    all.into_iter()
        .zip(keep)
        .filter_map(|(m, k)| k.then_some(m))
        .collect()
}

/// Graph backend without a target.
pub fn enumerate_proper_nested_graph(g: &OrientedGraph) -> Vec<NestedSet> {
    finish(nested_of_complete(g, g.all_edges(), None))
}

fn adapted_graph(g: &OrientedGraph, chamber: &ChamberCertificate) -> Vec<NestedSet> {
    let seq: Vec<Vec<Rational>> = chamber.sequence().map(|p| p.to_vec()).collect();
    finish(nested_of_complete(g, g.all_edges(), Some(&seq)))
}

fn finish(lists: Vec<Vec<SubsetIdx>>) -> Vec<NestedSet> {
    let mut out: Vec<NestedSet> = lists.into_iter().map(NestedSet::from_members).collect();
    out.sort();
    out.dedup();
    out
}

/// Vertex functions `u_0, u_1, …` standing for `u_0 + ε u_1 + ε² u_2 + …`.
type Perturbed = [Vec<Rational>];

/// Proper maximal nested sets of a complete edge set: split into irreducible
/// pieces and combine their nested sets.
fn nested_of_complete(
    g: &OrientedGraph,
    edges: SubsetIdx,
    target: Option<&Perturbed>,
) -> Vec<Vec<SubsetIdx>> {
    let pieces: Vec<SubsetIdx> = g
        .components(edges)
        .into_iter()
        .flat_map(|(_, comp)| graph::blocks(g, comp))
        .collect();
    let split = target.map(|t| split_among(g, edges, &pieces, t));
    let per_piece: Vec<Vec<Vec<SubsetIdx>>> = pieces
        .iter()
        .enumerate()
        .map(|(k, &p)| nested_of_irreducible(g, p, split.as_ref().map(|s| s[k].as_slice())))
        .collect();
    let mut acc: Vec<Vec<SubsetIdx>> = vec![Vec::new()];
    for options in per_piece {
        if options.is_empty() {
            return Vec::new();
        }
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for prefix in &acc {
            for opt in &options {
                let mut m = prefix.clone();
                m.extend_from_slice(opt);
                next.push(m);
            }
        }
        acc = next;
    }
    acc
}

fn nested_of_irreducible(
    g: &OrientedGraph,
    piece: SubsetIdx,
    target: Option<&Perturbed>,
) -> Vec<Vec<SubsetIdx>> {
    let a = piece.min_index().expect("pieces are nonempty");
    let (tail, head) = g.edges()[a];
    if piece.len() == 1 {
        // u = c x_a with c = u(head)
        if let Some(t) = target {
            if !lex_positive(t.iter().map(|u| &u[head])) {
                return Vec::new();
            }
        }
        return vec![vec![piece]];
    }
    let mut out = Vec::new();
    for (side_a, side_b) in graph::bipartitions(g, piece) {
        let head_in_a = side_a.binary_search(&head).is_ok();
        let tail_in_a = side_a.binary_search(&tail).is_ok();
        if head_in_a == tail_in_a {
            continue;
        }
        let into = if head_in_a { &side_a } else { &side_b };
        let rest = g.induced(piece, &side_a).union(g.induced(piece, &side_b));
        let reduced: Option<Vec<Vec<Rational>>> = match target {
            None => None,
            Some(t) => {
                let lambda: Vec<Rational> = t
                    .iter()
                    .map(|u| into.iter().map(|&v| &u[v]).sum())
                    .collect();
                if !lex_positive(&lambda) {
                    continue;
                }
                Some(
                    t.iter()
                        .zip(&lambda)
                        .map(|(u, l)| {
                            let mut w = u.clone();
                            w[head] -= l;
                            w[tail] += l;
                            w
                        })
                        .collect(),
                )
            }
        };
        for sub in nested_of_complete(g, rest, reduced.as_deref()) {
            let mut m = vec![piece];
            m.extend(sub);
            out.push(m);
        }
    }
    out
}

/// Splits each vertex function (lying in the span of `edges`) into its
/// components in the spans of the irreducible pieces, using edge
/// coordinates on a spanning forest.
fn split_among(
    g: &OrientedGraph,
    edges: SubsetIdx,
    pieces: &[SubsetIdx],
    target: &Perturbed,
) -> Vec<Vec<Vec<Rational>>> {
    let forest = spanning_forest(g, edges);
    let n = g.num_vertices();
    let mut out: Vec<Vec<Vec<Rational>>> =
        vec![vec![vec![Rational::zero(); n]; target.len()]; pieces.len()];
    for e in forest.iter() {
        let side = head_side(g, forest, e);
        let owner = pieces
            .iter()
            .position(|p| p.contains(e))
            .expect("pieces cover edges");
        let (tail, head) = g.edges()[e];
        for (k, u) in target.iter().enumerate() {
            let c: Rational = side.iter().map(|&v| &u[v]).sum();
            if !c.is_zero() {
                out[owner][k][head] += &c;
                out[owner][k][tail] -= &c;
            }
        }
    }
    out
}

fn spanning_forest(g: &OrientedGraph, edges: SubsetIdx) -> SubsetIdx {
    let mut parent: Vec<usize> = (0..g.num_vertices()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut forest = SubsetIdx::EMPTY;
    for e in edges.iter() {
        let (a, b) = g.edges()[e];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            forest.insert(e);
        }
    }
    forest
}

/// Vertices reachable from the head of `e` in `forest` without using `e`.
fn head_side(g: &OrientedGraph, forest: SubsetIdx, e: usize) -> Vec<usize> {
    let rest = forest.difference(SubsetIdx::singleton(e));
    let head = g.edges()[e].1;
    let mut seen = vec![head];
    let mut stack = vec![head];
    while let Some(v) = stack.pop() {
        for k in rest.iter() {
            let (a, b) = g.edges()[k];
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !seen.contains(&w) {
                seen.push(w);
                stack.push(w);
            }
        }
    }
    seen
}
