#![allow(dead_code)]

use polyflow_core::graph::incidence_config;
use polyflow_core::{MagicConfig, OrientedGraph, VectorConfig};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Positive roots of `A_n` in the order `e_i - e_j`, `(i, j)` lexicographic,
/// except that `A_2` uses `e1-e2 < e2-e3 < e1-e3`.
pub fn a2() -> VectorConfig {
    VectorConfig::new(3, vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]).unwrap()
}

pub fn a3() -> VectorConfig {
    let mut v = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let mut x = vec![0; 4];
            x[i] = 1;
            x[j] = -1;
            v.push(x);
        }
    }
    VectorConfig::new(4, v).unwrap()
}

pub fn magic(m: usize, n: usize) -> MagicConfig {
    MagicConfig::new(m, n).unwrap()
}

pub fn margins(m: usize, n: usize, r: i64, c: i64) -> Vec<i64> {
    let mut a = vec![r; m];
    a.extend(vec![-c; n]);
    a
}

pub fn random_order(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut o: Vec<usize> = (0..n).collect();
    o.shuffle(rng);
    o
}

/// A simple oriented graph on at most 6 vertices with 1..=max_edges edges.
pub fn random_graph(rng: &mut ChaCha8Rng, max_edges: usize) -> OrientedGraph {
    let nv = rng.gen_range(2..=6);
    let mut pairs: Vec<(usize, usize)> = (0..nv)
        .flat_map(|i| (i + 1..nv).map(move |j| (i, j)))
        .collect();
    pairs.shuffle(rng);
    let ne = rng.gen_range(1..=max_edges.min(pairs.len()));
    let edges = pairs[..ne]
        .iter()
        .map(|&(i, j)| if rng.gen_bool(0.5) { (i, j) } else { (j, i) })
        .collect();
    let vertices = (0..nv).map(|i| format!("v{i}")).collect();
    OrientedGraph::new(vertices, edges).unwrap()
}

/// An acyclic random graph: edges point from smaller to larger vertex
/// after a random relabelling.
pub fn random_network(rng: &mut ChaCha8Rng, max_edges: usize) -> OrientedGraph {
    let g = random_graph(rng, max_edges);
    let nv = g.num_vertices();
    let rank = random_order(rng, nv);
    let edges = g
        .edges()
        .iter()
        .map(|&(a, b)| if rank[a] < rank[b] { (a, b) } else { (b, a) })
        .collect();
    OrientedGraph::new(g.vertices().to_vec(), edges).unwrap()
}

pub fn graph_corpus() -> Vec<OrientedGraph> {
    let mut out = vec![
        OrientedGraph::complete(2),
        OrientedGraph::complete(3),
        OrientedGraph::complete(4),
        OrientedGraph::complete(5),
    ];
    for (m, n) in [(1, 3), (2, 2), (2, 3), (3, 3)] {
        out.push(magic(m, n).graph().clone());
    }
    let cycle = OrientedGraph::new(
        (0..4).map(|i| format!("v{i}")).collect(),
        vec![(0, 1), (1, 2), (2, 3), (3, 0)],
    )
    .unwrap();
    out.push(cycle);
    out
}

pub fn incidence(g: &OrientedGraph) -> VectorConfig {
    incidence_config(g).unwrap()
}
