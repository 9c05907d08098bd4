//! Nice tree decompositions: the evaluation skeleton of every solver.
//!
//! Nodes are stored children-before-parents, so a forward pass over
//! [`NiceTreeDecomposition::nodes`] is a valid bottom-up evaluation order and
//! the root is always the last node.

use std::fmt;
use std::fmt::Write as _;

use crate::decomposition::{validate_decomposition, TreeDecomposition, Violation};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf,
    Introduce(Vertex),
    Forget(Vertex),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NodeKind,
    /// Sorted.
    pub bag: Vec<Vertex>,
    pub children: Vec<usize>,
    pub parent: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| n.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Height of every node above its deepest leaf; nodes of equal height
    /// never depend on each other.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            h[i] = node.children.iter().map(|&c| h[c] + 1).max().unwrap_or(0);
        }
        h
    }

    /// The plain tree decomposition underlying this nice one.
    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|n| n.bag.clone()).collect();
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| n.parent.map(|p| (i, p)))
            .collect();
        TreeDecomposition::new(bags, edges)
    }

    /// One line per node: `id kind bag...`.
    pub fn to_debug_text(&self) -> String {
        let mut out = String::new();
        for (i, node) in self.nodes.iter().enumerate() {
            write!(out, "{i} {}", KindLabel(node.kind)).unwrap();
            for v in &node.bag {
                write!(out, " {}", v + 1).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Display helper used by traces and the debug dump; vertices are 1-indexed.
pub struct KindLabel(pub NodeKind);

impl fmt::Display for KindLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            NodeKind::Leaf => write!(f, "leaf"),
            NodeKind::Introduce(v) => write!(f, "introduce({})", v + 1),
            NodeKind::Forget(v) => write!(f, "forget({})", v + 1),
            NodeKind::Join => write!(f, "join"),
        }
    }
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, kind: NodeKind, bag: Vec<Vertex>, children: Vec<usize>) -> usize {
        let id = self.nodes.len();
        for &c in &children {
            self.nodes[c].parent = Some(id);
        }
        self.nodes.push(NiceNode {
            kind,
            bag,
            children,
            parent: None,
        });
        id
    }

    fn leaf(&mut self) -> usize {
        self.push(NodeKind::Leaf, Vec::new(), Vec::new())
    }

    /// Forgets `top \ target` then introduces `target \ top`, one vertex per node.
    fn transition(&mut self, mut top: usize, target: &[Vertex]) -> usize {
        let current = self.nodes[top].bag.clone();
        for &v in current.iter().filter(|v| target.binary_search(v).is_err()) {
            let bag: Vec<Vertex> = self.nodes[top].bag.iter().copied().filter(|&u| u != v).collect();
            top = self.push(NodeKind::Forget(v), bag, vec![top]);
        }
        for &v in target.iter().filter(|v| current.binary_search(v).is_err()) {
            let mut bag = self.nodes[top].bag.clone();
            let at = bag.binary_search(&v).unwrap_err();
            bag.insert(at, v);
            top = self.push(NodeKind::Introduce(v), bag, vec![top]);
        }
        top
    }
}

/// Converts a valid decomposition into nice form of the same width.
///
/// The input tree is rooted at node 0. A node with `d >= 2` children becomes
/// a right-leaning comb of `d - 1` join nodes whose bags equal the original
/// bag.
pub fn make_nice(td: &TreeDecomposition, g: &Graph) -> Result<NiceTreeDecomposition, Violation> {
    validate_decomposition(g, td)?;
    let adj = td.adjacency();
    let k = td.bags.len();
    // Iterative DFS order from node 0 so deep (path-like) trees are fine.
    let mut parent = vec![usize::MAX; k];
    let mut order = Vec::with_capacity(k);
    let mut stack = vec![0usize];
    parent[0] = 0;
    while let Some(t) = stack.pop() {
        order.push(t);
        for &u in adj[t].iter().rev() {
            if parent[u] == usize::MAX {
                parent[u] = t;
                stack.push(u);
            }
        }
    }
    let mut builder = Builder { nodes: Vec::new() };
    // top[t] = id of the nice node whose bag equals td.bags[t]
    let mut top = vec![usize::MAX; k];
    for &t in order.iter().rev() {
        let bag = &td.bags[t];
        let children: Vec<usize> = adj[t]
            .iter()
            .copied()
            .filter(|&u| u != t && parent[u] == t && u != 0)
            .collect();
        let mut branches: Vec<usize> = Vec::with_capacity(children.len().max(1));
        if children.is_empty() {
            let leaf = builder.leaf();
            branches.push(builder.transition(leaf, bag));
        } else {
            for c in children {
                branches.push(builder.transition(top[c], bag));
            }
        }
        let mut acc = branches.pop().unwrap();
        while let Some(b) = branches.pop() {
            acc = builder.push(NodeKind::Join, bag.clone(), vec![b, acc]);
        }
        top[t] = acc;
    }
    let root = builder.transition(top[0], &[]);
    if builder.nodes[root].kind == NodeKind::Leaf && builder.nodes.len() > 1 {
        unreachable!("a leaf is only the root when it is the only node");
    }
    Ok(NiceTreeDecomposition { nodes: builder.nodes })
}

/// Structural check of a nice decomposition against `g`. Returns the first
/// violation as a human-readable message naming the node.
pub fn check_nice(ntd: &NiceTreeDecomposition, g: &Graph) -> Result<(), String> {
    if ntd.nodes.is_empty() {
        return Err("no nodes".into());
    }
    let root = ntd.root();
    if !ntd.nodes[root].bag.is_empty() {
        return Err(format!("root node {root} has a nonempty bag"));
    }
    if ntd.nodes[root].parent.is_some() {
        return Err(format!("root node {root} has a parent"));
    }
    for (i, node) in ntd.nodes.iter().enumerate() {
        if node.bag.windows(2).any(|w| w[0] >= w[1]) {
            return Err(format!("node {i}: bag is not sorted and duplicate-free"));
        }
        if i != root && node.parent.is_none() {
            return Err(format!("node {i} has no parent"));
        }
        for &c in &node.children {
            if c >= i {
                return Err(format!("node {i}: child {c} does not precede its parent"));
            }
            if ntd.nodes[c].parent != Some(i) {
                return Err(format!("node {i}: child {c} has a different parent"));
            }
        }
        let child_bag = |j: usize| &ntd.nodes[node.children[j]].bag;
        match node.kind {
            NodeKind::Leaf => {
                if !node.children.is_empty() || !node.bag.is_empty() {
                    return Err(format!("leaf {i} has children or a nonempty bag"));
                }
            }
            NodeKind::Introduce(v) => {
                if node.children.len() != 1 {
                    return Err(format!("introduce node {i} must have one child"));
                }
                let cb = child_bag(0);
                if cb.contains(&v) || !node.bag.contains(&v) {
                    return Err(format!("introduce node {i}: vertex {} misplaced", v + 1));
                }
                let expect: Vec<Vertex> = node.bag.iter().copied().filter(|&u| u != v).collect();
                if &expect != cb {
                    return Err(format!("introduce node {i}: bag is not child bag plus {}", v + 1));
                }
            }
            NodeKind::Forget(v) => {
                if node.children.len() != 1 {
                    return Err(format!("forget node {i} must have one child"));
                }
                let cb = child_bag(0);
                let expect: Vec<Vertex> = cb.iter().copied().filter(|&u| u != v).collect();
                if !cb.contains(&v) || expect != node.bag {
                    return Err(format!("forget node {i}: bag is not child bag minus {}", v + 1));
                }
            }
            NodeKind::Join => {
                if node.children.len() != 2 {
                    return Err(format!("join node {i} must have two children"));
                }
                if child_bag(0) != &node.bag || child_bag(1) != &node.bag {
                    return Err(format!("join node {i}: children's bags differ from the node's bag"));
                }
            }
        }
    }
    validate_decomposition(g, &ntd.to_tree_decomposition()).map_err(|v| v.to_string())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::heuristic_decompose;

    fn count_kinds(ntd: &NiceTreeDecomposition) -> (usize, usize, usize, usize) {
        let mut c = (0, 0, 0, 0);
        for n in &ntd.nodes {
            match n.kind {
                NodeKind::Leaf => c.0 += 1,
                NodeKind::Introduce(_) => c.1 += 1,
                NodeKind::Forget(_) => c.2 += 1,
                NodeKind::Join => c.3 += 1,
            }
        }
        c
    }

    #[test]
    fn single_empty_bag_becomes_a_leaf() {
        let g = Graph::empty(0);
        let ntd = make_nice(&TreeDecomposition::new(vec![vec![]], vec![]), &g).unwrap();
        assert_eq!(ntd.len(), 1);
        assert_eq!(ntd.nodes[0].kind, NodeKind::Leaf);
        check_nice(&ntd, &g).unwrap();
    }

    #[test]
    fn path_introduces_and_forgets_each_vertex_once() {
        let g = Graph::path(3);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]);
        let ntd = make_nice(&td, &g).unwrap();
        check_nice(&ntd, &g).unwrap();
        let (leaves, intro, forget, join) = count_kinds(&ntd);
        assert_eq!((leaves, intro, forget, join), (1, 3, 3, 0));
        assert_eq!(ntd.width(), 1);
    }

    #[test]
    fn branching_creates_joins() {
        let g = Graph::star(3);
        let td = TreeDecomposition::new(
            vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 3]],
            vec![(0, 1), (0, 2), (0, 3)],
        );
        let ntd = make_nice(&td, &g).unwrap();
        check_nice(&ntd, &g).unwrap();
        assert_eq!(count_kinds(&ntd).3, 2);
    }

    #[test]
    fn rejects_broken_nice_trees() {
        let g = Graph::path(3);
        let mut ntd = make_nice(&heuristic_decompose(&g), &g).unwrap();
        let root = ntd.root();
        ntd.nodes[root].bag.push(0);
        assert!(check_nice(&ntd, &g).unwrap_err().contains("root"));

        let g = Graph::star(2);
        let td = TreeDecomposition::new(vec![vec![0], vec![0, 1], vec![0, 2]], vec![(0, 1), (0, 2)]);
        let mut ntd = make_nice(&td, &g).unwrap();
        let j = ntd.nodes.iter().position(|n| n.kind == NodeKind::Join).unwrap();
        let c = ntd.nodes[j].children[0];
        ntd.nodes[c].bag = vec![0, 1];
        let err = check_nice(&ntd, &g).unwrap_err();
        assert!(err.contains(&format!("{j}")) || err.contains(&format!("{c}")), "{err}");
    }

    #[test]
    fn invalid_input_propagates() {
        let g = Graph::cycle(4);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![2, 3]], vec![(0, 1)]);
        assert_eq!(make_nice(&td, &g), Err(Violation::EdgeUncovered(1, 2)));
    }

    #[test]
    fn debug_text_lists_every_node() {
        let g = Graph::path(2);
        let ntd = make_nice(&TreeDecomposition::trivial(&g), &g).unwrap();
        let text = ntd.to_debug_text();
        assert_eq!(text.lines().count(), ntd.len());
        assert!(text.starts_with("0 leaf\n1 introduce(1) 1\n"));
    }
}
