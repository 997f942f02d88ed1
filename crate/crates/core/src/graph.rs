//! Oriented graphs and their incidence arrangements.
//!
//! Edge `k` of a graph is vector `k` of its incidence configuration, so edge
//! subsets and [`SubsetIdx`] over the configuration are interchangeable.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use crate::config::{check_permutation, VectorConfig};
use crate::error::{Error, Result};
use crate::subset::{SubsetIdx, MAX_VECTORS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedGraph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl OrientedGraph {
    /// Builds a graph from vertex labels and `(tail, head)` position pairs.
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if edges.len() > MAX_VECTORS {
            return Err(Error::TooManyVectors(edges.len()));
        }
        let mut seen_labels = std::collections::HashSet::new();
        for v in &vertices {
            if !seen_labels.insert(v.as_str()) {
                return Err(Error::InvalidGraph(format!("duplicate vertex {v:?}")));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for (k, &(t, h)) in edges.iter().enumerate() {
            if t >= vertices.len() || h >= vertices.len() {
                return Err(Error::InvalidGraph(format!(
                    "edge {k} has an unknown endpoint"
                )));
            }
            if t == h {
                return Err(Error::InvalidGraph(format!(
                    "edge {k} is a self-loop at {:?}",
                    vertices[t]
                )));
            }
            if !seen.insert((t.min(h), t.max(h))) {
                return Err(Error::InvalidGraph(format!(
                    "edge {k} repeats the pair {:?}-{:?}",
                    vertices[t], vertices[h]
                )));
            }
        }
        Ok(OrientedGraph { vertices, edges })
    }

    /// Builds a graph from label pairs.
    pub fn from_labels(vertices: Vec<String>, edges: &[(String, String)]) -> Result<Self> {
        let index: BTreeMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let lookup = |l: &String| {
            index
                .get(l.as_str())
                .copied()
                .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex {l:?}")))
        };
        let pairs = edges
            .iter()
            .map(|(t, h)| Ok((lookup(t)?, lookup(h)?)))
            .collect::<Result<Vec<_>>>()?;
        OrientedGraph::new(vertices, pairs)
    }

    /// Complete graph on `n` vertices labelled `1..=n`, edges `i -> j` for
    /// `i < j` in lexicographic order.
    pub fn complete(n: usize) -> Self {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        OrientedGraph::new(vertices, edges).expect("complete graph is simple")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn all_edges(&self) -> SubsetIdx {
        SubsetIdx::full(self.edges.len())
    }

    /// Graph whose k-th edge is `self.edges()[order[k]]`.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        check_permutation(order, self.edges.len())?;
        Ok(OrientedGraph {
            vertices: self.vertices.clone(),
            edges: order.iter().map(|&i| self.edges[i]).collect(),
        })
    }

    /// Edges sorted by (tail position, head position).
    pub fn lex_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.edges.len()).collect();
        order.sort_by_key(|&k| self.edges[k]);
        order
    }

    /// Number of connected components, isolated vertices included.
    pub fn b0(&self) -> usize {
        let touched = self.vertices_of(self.all_edges());
        self.components(self.all_edges()).len() + self.num_vertices() - touched.len()
    }

    /// Vertices incident to at least one edge of `edges`, sorted.
    pub fn vertices_of(&self, edges: SubsetIdx) -> Vec<usize> {
        let mut vs: Vec<usize> = edges
            .iter()
            .flat_map(|k| [self.edges[k].0, self.edges[k].1])
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Connected components of the subgraph formed by `edges`, as
    /// (sorted vertices, edges), ordered by smallest edge.
    pub fn components(&self, edges: SubsetIdx) -> Vec<(Vec<usize>, SubsetIdx)> {
        let mut parent: Vec<usize> = (0..self.num_vertices()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for k in edges.iter() {
            let (a, b) = self.edges[k];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut by_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut out: Vec<(Vec<usize>, SubsetIdx)> = Vec::new();
        for k in edges.iter() {
            let root = find(&mut parent, self.edges[k].0);
            let slot = *by_root.entry(root).or_insert_with(|| {
                out.push((Vec::new(), SubsetIdx::EMPTY));
                out.len() - 1
            });
            out[slot].1.insert(k);
        }
        for comp in out.iter_mut() {
            comp.0 = self.vertices_of(comp.1);
        }
        out
    }

    pub fn is_connected(&self, edges: SubsetIdx) -> bool {
        self.components(edges).len() == 1
    }

    /// Edges of `within` with both endpoints in `vertices`.
    pub fn induced(&self, within: SubsetIdx, vertices: &[usize]) -> SubsetIdx {
        within
            .iter()
            .filter(|&k| {
                let (a, b) = self.edges[k];
                vertices.binary_search(&a).is_ok() && vertices.binary_search(&b).is_ok()
            })
            .collect()
    }
}

/// `x_a = e_head - e_tail` for every edge, in edge order.
pub fn incidence_config(g: &OrientedGraph) -> Result<VectorConfig> {
    let vectors = g
        .edges()
        .iter()
        .map(|&(t, h)| {
            let mut v = vec![0i64; g.num_vertices()];
            v[h] = 1;
            v[t] = -1;
            v
        })
        .collect();
    VectorConfig::new(g.num_vertices(), vectors)
}

/// `Some(order)` with a vertex order compatible with every edge when the
/// graph has no directed cycle, `None` otherwise.
pub fn is_network(g: &OrientedGraph) -> Option<Vec<usize>> {
    let n = g.num_vertices();
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(t, h) in g.edges() {
        indeg[h] += 1;
        out[t].push(h);
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = ready.pop() {
        order.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(Reverse(w));
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Adds every edge of `g` whose endpoints lie in one connected component of
/// the subgraph, until nothing changes.
pub fn graph_completion(g: &OrientedGraph, sub: SubsetIdx) -> SubsetIdx {
    let mut cur = sub;
    loop {
        let mut next = cur;
        for (vs, _) in g.components(cur) {
            next = next.union(g.induced(g.all_edges(), &vs));
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// The maximal proper complete subsets of a connected complete subgraph:
/// for each split of its vertices into two sides whose induced subgraphs are
/// connected, the edges that stay inside a side. A single-vertex side is the
/// vertex-deletion case.
pub fn maximal_complete_subsets(g: &OrientedGraph, sub: SubsetIdx) -> Result<Vec<SubsetIdx>> {
    if !g.is_connected(sub) {
        return Err(Error::Disconnected);
    }
    if graph_completion(g, sub) != sub {
        return Err(Error::NotComplete);
    }
    let mut out: Vec<SubsetIdx> = bipartitions(g, sub)
        .into_iter()
        .map(|(a, b)| g.induced(sub, &a).union(g.induced(sub, &b)))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Vertex splits `(A, B)` of a connected subgraph with both induced
/// subgraphs connected. Each unordered split appears once, with the
/// smallest vertex in `A`.
pub(crate) fn bipartitions(g: &OrientedGraph, sub: SubsetIdx) -> Vec<(Vec<usize>, Vec<usize>)> {
    let vs = g.vertices_of(sub);
    let n = vs.len();
    assert!(n < 32, "too many vertices for split enumeration");
    let mut out = Vec::new();
    // vertex vs[0] always on side A
    for mask in 0u32..(1 << (n - 1)) {
        let full = (mask << 1) | 1;
        if full == (1 << n) - 1 {
            continue;
        }
        let a: Vec<usize> = (0..n)
            .filter(|&i| full >> i & 1 == 1)
            .map(|i| vs[i])
            .collect();
        let b: Vec<usize> = (0..n)
            .filter(|&i| full >> i & 1 == 0)
            .map(|i| vs[i])
            .collect();
        if side_connected(g, sub, &a) && side_connected(g, sub, &b) {
            out.push((a, b));
        }
    }
    out
}

fn side_connected(g: &OrientedGraph, sub: SubsetIdx, side: &[usize]) -> bool {
    if side.len() == 1 {
        return true;
    }
    let e = g.induced(sub, side);
    g.is_connected(e) && g.vertices_of(e).len() == side.len()
}

/// Blocks (maximal subgraphs without a cut vertex) of a connected subgraph,
/// ordered by smallest edge. A bridge is a block of one edge.
pub fn wedge_components(g: &OrientedGraph, sub: SubsetIdx) -> Result<Vec<SubsetIdx>> {
    if !g.is_connected(sub) {
        return Err(Error::Disconnected);
    }
    Ok(blocks(g, sub))
}

pub(crate) fn blocks(g: &OrientedGraph, sub: SubsetIdx) -> Vec<SubsetIdx> {
    let n = g.num_vertices();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for k in sub.iter() {
        let (a, b) = g.edges()[k];
        adj[a].push((b, k));
        adj[b].push((a, k));
    }
    struct Dfs<'a> {
        adj: &'a [Vec<(usize, usize)>],
        disc: Vec<Option<usize>>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<usize>,
        out: Vec<SubsetIdx>,
    }
    impl Dfs<'_> {
        fn visit(&mut self, u: usize, parent_edge: Option<usize>) {
            let du = self.time;
            self.disc[u] = Some(du);
            self.low[u] = du;
            self.time += 1;
            for &(w, k) in &self.adj[u] {
                if Some(k) == parent_edge {
                    continue;
                }
                match self.disc[w] {
                    None => {
                        self.stack.push(k);
                        self.visit(w, Some(k));
                        self.low[u] = self.low[u].min(self.low[w]);
                        if self.low[w] >= du {
                            let mut block = SubsetIdx::EMPTY;
                            while let Some(e) = self.stack.pop() {
                                block.insert(e);
                                if e == k {
                                    break;
                                }
                            }
                            self.out.push(block);
                        }
                    }
                    Some(dw) if dw < du => {
                        self.stack.push(k);
                        self.low[u] = self.low[u].min(dw);
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let mut dfs = Dfs {
        adj: &adj,
        disc: vec![None; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in g.vertices_of(sub) {
        if dfs.disc[v].is_none() {
            dfs.visit(v, None);
        }
    }
    let mut out = dfs.out;
    out.sort_by_key(|s| s.min_index());
    out
}

/// Integer weights on vertices: a target vector in `Z^V`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexWeighting(pub BTreeMap<String, i64>);

impl VertexWeighting {
    /// The weights as a vector indexed by vertex position. Vertices without
    /// a weight get 0.
    pub fn to_target(&self, g: &OrientedGraph) -> Result<Vec<i64>> {
        let mut t = vec![0i64; g.num_vertices()];
        for (label, &w) in &self.0 {
            let i = g
                .vertices()
                .iter()
                .position(|v| v == label)
                .ok_or_else(|| {
                    Error::InvalidGraph(format!("weight for unknown vertex {label:?}"))
                })?;
            t[i] = w;
        }
        check_balanced(g, &t)?;
        Ok(t)
    }
}

/// Weights must sum to zero on every connected component (isolated vertices
/// included) for the target to lie in the span of the incidence vectors.
pub fn check_balanced(g: &OrientedGraph, target: &[i64]) -> Result<()> {
    let mut covered = vec![false; g.num_vertices()];
    for (vs, _) in g.components(g.all_edges()) {
        let s: i64 = vs.iter().map(|&v| target[v]).sum();
        if s != 0 {
            return Err(Error::UnbalancedWeights);
        }
        for v in vs {
            covered[v] = true;
        }
    }
    if (0..g.num_vertices()).any(|v| !covered[v] && target[v] != 0) {
        return Err(Error::UnbalancedWeights);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{components, is_unimodular, span_closure};

    fn graph(n: usize, edges: &[(usize, usize)]) -> OrientedGraph {
        OrientedGraph::new((0..n).map(|i| format!("v{i}")).collect(), edges.to_vec()).unwrap()
    }

    fn set(v: &[usize]) -> SubsetIdx {
        v.iter().copied().collect()
    }

    #[test]
    fn rejects_loops_and_multi_edges() {
        let vs = vec!["a".to_string(), "b".to_string()];
        assert!(matches!(
            OrientedGraph::new(vs.clone(), vec![(0, 0)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            OrientedGraph::new(vs.clone(), vec![(0, 1), (1, 0)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            OrientedGraph::new(vs, vec![(0, 2)]),
            Err(Error::InvalidGraph(_))
        ));
    }

    #[test]
    fn incidence_examples() {
        let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let c = incidence_config(&k3).unwrap();
        assert_eq!(
            c.vectors(),
            &[vec![-1, 1, 0], vec![0, -1, 1], vec![-1, 0, 1]]
        );
        assert_eq!(
            OrientedGraph::complete(3).edges(),
            &[(0, 1), (0, 2), (1, 2)]
        );
        assert_eq!(c.rank(), 2);
        let one = graph(2, &[(0, 1)]);
        assert_eq!(incidence_config(&one).unwrap().rank(), 1);
        let two = graph(4, &[(0, 1), (2, 3)]);
        assert_eq!(incidence_config(&two).unwrap().rank(), 2);
        assert_eq!(two.b0(), 2);
        assert!(is_unimodular(&c));
    }

    #[test]
    fn network_detection() {
        assert_eq!(is_network(&OrientedGraph::complete(3)), Some(vec![0, 1, 2]));
        assert_eq!(is_network(&graph(3, &[(0, 1), (1, 2), (2, 0)])), None);
        assert_eq!(is_network(&graph(2, &[])), Some(vec![0, 1]));
        let g = graph(3, &[(2, 0), (0, 1)]);
        assert_eq!(is_network(&g), Some(vec![2, 0, 1]));
    }

    #[test]
    fn completion_examples() {
        let k3 = OrientedGraph::complete(3);
        assert_eq!(graph_completion(&k3, set(&[0, 1])), k3.all_edges());
        let path = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(graph_completion(&path, set(&[0, 1])), set(&[0, 1]));
        // two components {0-1} and {2-3} joined by one g-edge 1-2
        assert_eq!(graph_completion(&path, set(&[0, 2])), set(&[0, 2]));
    }

    #[test]
    fn maximal_complete_examples() {
        let k3 = OrientedGraph::complete(3);
        assert_eq!(
            maximal_complete_subsets(&k3, k3.all_edges()).unwrap(),
            vec![set(&[0]), set(&[1]), set(&[2])]
        );
        let one = graph(2, &[(0, 1)]);
        assert_eq!(
            maximal_complete_subsets(&one, one.all_edges()).unwrap(),
            vec![SubsetIdx::EMPTY]
        );
        // K_{2,2}: rows r0,r1 (0,1), cols c0,c1 (2,3); edges (1|1),(1|2),(2|1),(2|2)
        let k22 = graph(4, &[(2, 0), (3, 0), (2, 1), (3, 1)]);
        let m = maximal_complete_subsets(&k22, k22.all_edges()).unwrap();
        assert_eq!(m.len(), 6);
        assert!(m.contains(&set(&[0, 3])) && m.contains(&set(&[1, 2])));
        assert_eq!(
            maximal_complete_subsets(&k3, set(&[0, 1])),
            Err(Error::NotComplete)
        );
        let two = graph(4, &[(0, 1), (2, 3)]);
        assert_eq!(
            maximal_complete_subsets(&two, two.all_edges()),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn wedge_examples() {
        // triangles {0,1,2} and {2,3,4} sharing vertex 2
        let bow = graph(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        assert_eq!(
            wedge_components(&bow, bow.all_edges()).unwrap(),
            vec![set(&[0, 1, 2]), set(&[3, 4, 5])]
        );
        let k3 = OrientedGraph::complete(3);
        assert_eq!(
            wedge_components(&k3, k3.all_edges()).unwrap(),
            vec![k3.all_edges()]
        );
        let path = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(
            wedge_components(&path, path.all_edges()).unwrap(),
            vec![set(&[0]), set(&[1]), set(&[2])]
        );
        let c = incidence_config(&bow).unwrap();
        assert_eq!(
            components(&c, bow.all_edges()),
            blocks(&bow, bow.all_edges())
        );
    }

    #[test]
    fn completion_agrees_with_span_closure_on_k4() {
        let k4 = OrientedGraph::complete(4);
        let c = incidence_config(&k4).unwrap();
        for s in k4.all_edges().subsets() {
            assert_eq!(graph_completion(&k4, s), span_closure(&c, s));
        }
    }

    #[test]
    fn weights_balance() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let mut w = VertexWeighting::default();
        w.0.insert("v0".into(), -1);
        w.0.insert("v2".into(), 1);
        assert_eq!(w.to_target(&g).unwrap(), vec![-1, 0, 1]);
        w.0.insert("v1".into(), 1);
        assert_eq!(w.to_target(&g), Err(Error::UnbalancedWeights));
        let mut w = VertexWeighting::default();
        w.0.insert("zz".into(), 0);
        assert!(w.to_target(&g).is_err());
    }
}
