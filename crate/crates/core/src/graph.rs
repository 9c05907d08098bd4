//! Simple undirected graphs.
//!
//! Vertices are `0..n` internally. The PACE text formats number vertices
//! from 1; the conversion happens only in [`crate::io`] (vertex `v` in a file
//! is vertex `v - 1` here).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Vertex id, 0-indexed.
pub type Vertex = usize;

/// An unordered pair stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
}

/// A simple undirected graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph, rejecting self-loops, duplicates and out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::OutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.adjacency[u].binary_search(&v) {
            Ok(_) => return Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Err(i) => self.adjacency[u].insert(i, v),
        }
        let j = self.adjacency[v].binary_search(&u).unwrap_err();
        self.adjacency[v].insert(j, u);
        self.edge_count += 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges().collect()
    }

    /// The spanning subgraph that keeps every edge except those in `removed`.
    pub fn without_edges(&self, removed: &[Edge]) -> Graph {
        let removed: BTreeSet<Edge> = removed.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        let mut g = Graph::empty(self.n());
        for e in self.edges().filter(|e| !removed.contains(e)) {
            g.add_edge(e.0, e.1).expect("subgraph of a simple graph is simple");
        }
        g
    }

    /// Number of connected components (isolated vertices count).
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n()];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least three vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        assert_eq!(Graph::from_edges(2, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::OutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn adjacency_is_symmetric() {
        let g = Graph::cycle(5);
        for (u, v) in g.edges() {
            assert!(g.has_edge(u, v) && g.has_edge(v, u));
        }
        assert_eq!(g.m(), 5);
        assert_eq!(g.edges().count(), 5);
    }

    #[test]
    fn components() {
        let g = Graph::from_edges(5, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.component_count(), 3);
        assert!(!g.is_connected());
        assert!(Graph::empty(0).is_connected());
    }
}
