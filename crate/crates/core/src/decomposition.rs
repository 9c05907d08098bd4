//! Tree decompositions: validation and a min-degree construction.

use std::collections::BTreeSet;
use std::fmt;

use crate::graph::{Graph, Vertex};

/// A tree decomposition with 0-indexed nodes.
///
/// Bags are kept sorted. The tree is given by an undirected edge list over
/// node ids; [`validate_decomposition`] checks that it really is a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<Vertex>>,
    pub tree_edges: Vec<(usize, usize)>,
}

/// The first decomposition axiom found to fail, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoNodes,
    NotATree { nodes: usize, edges: usize },
    BadTreeEdge(usize, usize),
    VertexOutOfRange { node: usize, vertex: Vertex },
    VertexUncovered(Vertex),
    EdgeUncovered(Vertex, Vertex),
    DisconnectedOccurrences(Vertex),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // 1-indexed, as in the input files
        match *self {
            Violation::NoNodes => write!(f, "decomposition has no nodes"),
            Violation::NotATree { nodes, edges } => {
                write!(f, "tree edges do not form a tree ({nodes} nodes, {edges} edges)")
            }
            Violation::BadTreeEdge(a, b) => write!(f, "invalid tree edge {} {}", a + 1, b + 1),
            Violation::VertexOutOfRange { node, vertex } => {
                write!(f, "bag {} contains out-of-range vertex {}", node + 1, vertex + 1)
            }
            Violation::VertexUncovered(v) => write!(f, "vertex {} is in no bag", v + 1),
            Violation::EdgeUncovered(u, v) => {
                write!(f, "edge {{{}, {}}} is not contained in any bag", u + 1, v + 1)
            }
            Violation::DisconnectedOccurrences(v) => {
                write!(f, "bags containing vertex {} are not connected", v + 1)
            }
        }
    }
}

impl std::error::Error for Violation {}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<Vertex>>, tree_edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, tree_edges }
    }

    /// A single bag holding every vertex.
    pub fn trivial(g: &Graph) -> Self {
        TreeDecomposition::new(vec![g.vertices().collect()], Vec::new())
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Max bag size minus one; 0 when every bag is empty.
    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.tree_edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}

/// Checks the three decomposition axioms and returns the width.
pub fn validate_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<usize, Violation> {
    let k = td.bags.len();
    if k == 0 {
        return Err(Violation::NoNodes);
    }
    for &(a, b) in &td.tree_edges {
        if a >= k || b >= k || a == b {
            return Err(Violation::BadTreeEdge(a, b));
        }
    }
    let not_a_tree = Violation::NotATree {
        nodes: k,
        edges: td.tree_edges.len(),
    };
    if td.tree_edges.len() != k - 1 {
        return Err(not_a_tree);
    }
    let adj = td.adjacency();
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    let mut reached = 1;
    while let Some(t) = stack.pop() {
        for &u in &adj[t] {
            if !seen[u] {
                seen[u] = true;
                reached += 1;
                stack.push(u);
            }
        }
    }
    if reached != k {
        return Err(not_a_tree);
    }

    let n = g.n();
    let mut occurrences = vec![0usize; n];
    for (node, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                return Err(Violation::VertexOutOfRange { node, vertex: v });
            }
            occurrences[v] += 1;
        }
    }
    if let Some(v) = occurrences.iter().position(|&c| c == 0) {
        return Err(Violation::VertexUncovered(v));
    }
    // Occurrences of v induce a forest in the tree; it is connected iff it
    // has exactly one edge fewer than nodes.
    let mut shared_edges = vec![0usize; n];
    for &(a, b) in &td.tree_edges {
        for v in sorted_intersection(&td.bags[a], &td.bags[b]) {
            shared_edges[v] += 1;
        }
    }
    if let Some(v) = (0..n).find(|&v| shared_edges[v] + 1 != occurrences[v]) {
        return Err(Violation::DisconnectedOccurrences(v));
    }
    let mut covered: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    for bag in &td.bags {
        for (i, &u) in bag.iter().enumerate() {
            for &v in &bag[i + 1..] {
                if g.has_edge(u, v) {
                    covered.insert((u, v));
                }
            }
        }
    }
    // witness: the uncovered edge with the smallest larger endpoint
    if let Some((u, v)) = g.edges().filter(|e| !covered.contains(e)).min_by_key(|&(u, v)| (v, u)) {
        return Err(Violation::EdgeUncovered(u, v));
    }
    Ok(td.width())
}

pub(crate) fn sorted_intersection(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Min-degree elimination (ties broken by fill-in, then by vertex id).
pub fn heuristic_decompose(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    let mut adj: Vec<BTreeSet<Vertex>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let min_deg = (0..n).filter(|&v| alive[v]).map(|v| adj[v].len()).min().unwrap();
        let v = (0..n)
            .filter(|&v| alive[v] && adj[v].len() == min_deg)
            .min_by_key(|&v| (fill_in(&adj, v), v))
            .unwrap();
        eliminate(&mut adj, &mut alive, v);
        order.push(v);
    }
    decompose_with_order(g, &order)
}

fn fill_in(adj: &[BTreeSet<Vertex>], v: Vertex) -> usize {
    let ns: Vec<Vertex> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in ns.iter().enumerate() {
        for &b in &ns[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

fn eliminate(adj: &mut [BTreeSet<Vertex>], alive: &mut [bool], v: Vertex) {
    let ns: Vec<Vertex> = adj[v].iter().copied().collect();
    for (i, &a) in ns.iter().enumerate() {
        adj[a].remove(&v);
        for &b in &ns[i + 1..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    adj[v].clear();
    alive[v] = false;
}

/// Builds the decomposition induced by an elimination ordering: one bag per
/// vertex (itself plus its later neighbours in the filled graph), attached to
/// the bag of the earliest-eliminated such neighbour. Components are chained
/// together so the result is always a single tree.
pub fn decompose_with_order(g: &Graph, order: &[Vertex]) -> TreeDecomposition {
    let n = g.n();
    assert_eq!(order.len(), n, "elimination order must list every vertex once");
    if n == 0 {
        return TreeDecomposition::new(vec![Vec::new()], Vec::new());
    }
    let mut rank = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        assert!(rank[v] == usize::MAX, "vertex {v} repeated in elimination order");
        rank[v] = i;
    }
    let mut adj: Vec<BTreeSet<Vertex>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut bags = Vec::with_capacity(n);
    let mut parent_vertex = Vec::with_capacity(n);
    for &v in order {
        let mut bag: Vec<Vertex> = adj[v].iter().copied().collect();
        parent_vertex.push(bag.iter().copied().min_by_key(|&u| rank[u]));
        bag.push(v);
        bags.push(bag);
        eliminate(&mut adj, &mut alive, v);
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut last_root: Option<usize> = None;
    for (i, p) in parent_vertex.iter().enumerate() {
        match p {
            Some(u) => edges.push((i, rank[*u])),
            None => {
                if let Some(r) = last_root {
                    edges.push((r, i));
                }
                last_root = Some(i);
            }
        }
    }
    TreeDecomposition::new(bags, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_single_bag_is_valid() {
        let g = Graph::complete(3);
        assert_eq!(validate_decomposition(&g, &TreeDecomposition::trivial(&g)), Ok(2));
    }

    #[test]
    fn empty_graph_single_empty_bag_has_width_zero() {
        let g = Graph::empty(0);
        let td = TreeDecomposition::new(vec![vec![]], vec![]);
        assert_eq!(validate_decomposition(&g, &td), Ok(0));
    }

    #[test]
    fn c4_with_two_disjoint_bags_misses_an_edge() {
        let g = Graph::cycle(4);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![2, 3]], vec![(0, 1)]);
        assert_eq!(validate_decomposition(&g, &td), Err(Violation::EdgeUncovered(1, 2)));
    }

    #[test]
    fn detects_non_tree_and_disconnected_occurrences() {
        let g = Graph::path(3);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![]);
        assert!(matches!(
            validate_decomposition(&g, &td),
            Err(Violation::NotATree { .. })
        ));
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![2], vec![1, 2]], vec![(0, 1), (1, 2)]);
        assert_eq!(
            validate_decomposition(&g, &td),
            Err(Violation::DisconnectedOccurrences(1))
        );
    }

    #[test]
    fn heuristic_widths() {
        let tree = Graph::from_edges(6, [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
        let td = heuristic_decompose(&tree);
        assert_eq!(validate_decomposition(&tree, &td), Ok(1));
        for n in 3..9 {
            let c = Graph::cycle(n);
            assert_eq!(validate_decomposition(&c, &heuristic_decompose(&c)), Ok(2));
        }
        for k in 1..6 {
            let kk = Graph::complete(k);
            assert_eq!(validate_decomposition(&kk, &heuristic_decompose(&kk)), Ok(k - 1));
        }
    }

    #[test]
    fn heuristic_handles_disconnected_graphs() {
        let g = Graph::from_edges(7, [(0, 1), (2, 3), (3, 4), (4, 2)]).unwrap();
        let td = heuristic_decompose(&g);
        assert_eq!(validate_decomposition(&g, &td), Ok(2));
        assert_eq!(td.node_count(), 7);
    }
}
