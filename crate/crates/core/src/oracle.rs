//! Exhaustive recognizers and brute-force minimum deletion.
//!
//! Every recognizer searches the representations of its class directly, with
//! pruning and memoized dead ends, so it shares no code with the solvers it
//! is used to check.

use std::collections::HashSet;

use crate::class::GraphClass;
use crate::graph::{Edge, Graph, Vertex};
use crate::order::{EndpointOrder, OrderMode, OrderPair, Token};

/// Largest graph the oracle accepts unless told otherwise.
pub const DEFAULT_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("graph has {n} vertices; the exhaustive oracle is capped at {cap}")]
    TooLarge { n: usize, cap: usize },
}

/// A representation found by the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Intervals(EndpointOrder),
    Permutation(OrderPair),
    /// `W` and the order of right endpoints.
    Threshold {
        dominating: Vec<Vertex>,
        order: Vec<Vertex>,
    },
}

fn check_cap(g: &Graph, cap: usize) -> Result<(), OracleError> {
    if g.n() > cap || g.n() > 30 {
        return Err(OracleError::TooLarge {
            n: g.n(),
            cap: cap.min(30),
        });
    }
    Ok(())
}

fn masks(g: &Graph) -> Vec<u32> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect()
}

pub fn is_in_class(g: &Graph, class: GraphClass) -> Result<bool, OracleError> {
    is_in_class_capped(g, class, DEFAULT_MAX_N)
}

pub fn is_in_class_capped(g: &Graph, class: GraphClass, cap: usize) -> Result<bool, OracleError> {
    Ok(witness_capped(g, class, cap)?.is_some())
}

/// Some representation of `g` in `class`, if one exists.
pub fn witness_capped(g: &Graph, class: GraphClass, cap: usize) -> Result<Option<Witness>, OracleError> {
    check_cap(g, cap)?;
    let adj = masks(g);
    Ok(match class {
        GraphClass::Interval | GraphClass::ProperInterval | GraphClass::TriviallyPerfect => linear_sweep(&adj, class)
            .map(|t| Witness::Intervals(EndpointOrder::from_tokens(OrderMode::Linear, t).unwrap())),
        GraphClass::CircularArc => circular_sweep(&adj)
            .map(|t| Witness::Intervals(EndpointOrder::from_tokens(OrderMode::Circular, t).unwrap())),
        GraphClass::Permutation => permutation_search(&adj).map(Witness::Permutation),
        GraphClass::Threshold => {
            threshold_search(&adj).map(|(dominating, order)| Witness::Threshold { dominating, order })
        }
    })
}

/// Smallest number of edges whose removal puts `g` in `class`.
pub fn min_edge_deletion_bruteforce(g: &Graph, class: GraphClass) -> Result<usize, OracleError> {
    min_edge_deletion_capped(g, class, DEFAULT_MAX_N)
}

pub fn min_edge_deletion_capped(g: &Graph, class: GraphClass, cap: usize) -> Result<usize, OracleError> {
    check_cap(g, cap)?;
    let edges: Vec<Edge> = g.edges().collect();
    for d in 0..=edges.len() {
        let mut pick: Vec<usize> = (0..d).collect();
        loop {
            let removed: Vec<Edge> = pick.iter().map(|&i| edges[i]).collect();
            if is_in_class_capped(&g.without_edges(&removed), class, cap)? {
                return Ok(d);
            }
            if !next_combination(&mut pick, edges.len()) {
                break;
            }
        }
    }
    unreachable!("the edgeless graph is in every class")
}

fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if pick[i] < n - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| mask >> i & 1 == 1)
}

/// Interval, proper interval and nested representations, sweeping tokens
/// left to right. A vertex may open only if every open vertex is a
/// neighbour and every closed one is not; it may close only if no unstarted
/// vertex is a neighbour. Proper closes in opening order, nested in reverse.
fn linear_sweep(adj: &[u32], class: GraphClass) -> Option<Vec<Token>> {
    struct Search<'a> {
        adj: &'a [u32],
        class: GraphClass,
        all: u32,
        failed: HashSet<(Vec<u8>, u32)>,
        path: Vec<Token>,
    }
    impl Search<'_> {
        fn go(&mut self, open: &mut Vec<u8>, closed: u32) -> bool {
            let open_mask = open.iter().fold(0u32, |m, &v| m | 1 << v);
            let unstarted = self.all & !open_mask & !closed;
            if open.is_empty() && unstarted == 0 {
                return true;
            }
            let key = if self.class == GraphClass::Interval {
                let mut s = open.clone();
                s.sort_unstable();
                (s, closed)
            } else {
                (open.clone(), closed)
            };
            if self.failed.contains(&key) {
                return false;
            }
            for v in bits(unstarted) {
                let nv = self.adj[v];
                if open_mask & !nv == 0 && closed & nv == 0 {
                    open.push(v as u8);
                    self.path.push(Token::L(v));
                    if self.go(open, closed) {
                        return true;
                    }
                    self.path.pop();
                    open.pop();
                }
            }
            let candidates: Vec<usize> = match self.class {
                GraphClass::ProperInterval => open.first().map(|&v| vec![v as usize]).unwrap_or_default(),
                GraphClass::TriviallyPerfect => open.last().map(|&v| vec![v as usize]).unwrap_or_default(),
                _ => open.iter().map(|&v| v as usize).collect(),
            };
            for v in candidates {
                if unstarted & self.adj[v] == 0 {
                    let i = open.iter().position(|&u| u as usize == v).unwrap();
                    open.remove(i);
                    self.path.push(Token::R(v));
                    if self.go(open, closed | 1 << v) {
                        return true;
                    }
                    self.path.pop();
                    open.insert(i, v as u8);
                }
            }
            self.failed.insert(key);
            false
        }
    }
    let n = adj.len();
    let mut s = Search {
        adj,
        class,
        all: if n == 0 { 0 } else { u32::MAX >> (32 - n) },
        failed: HashSet::new(),
        path: vec![Token::Bot],
    };
    if s.go(&mut Vec::new(), 0) {
        s.path.push(Token::Top);
        Some(s.path)
    } else {
        None
    }
}

/// Circular-arc representations. The sweep starts at a cut point; the arcs
/// containing it (a clique `S`) are open at the start, close once and reopen
/// later. Each vertex moves through three stages: for arcs not in `S`
/// unstarted, open, closed; for arcs in `S` open, gap, open again. An arc
/// opened while a neighbour from `S` sat in its gap must stay open until
/// that neighbour reopens.
fn circular_sweep(adj: &[u32]) -> Option<Vec<Token>> {
    struct Search<'a> {
        adj: &'a [u32],
        s: u32,
        all: u32,
        waits: Vec<u32>,
        failed: HashSet<(u32, u32, Vec<u32>)>,
        path: Vec<Token>,
    }
    impl Search<'_> {
        fn go(&mut self, once: u32, twice: u32) -> bool {
            if twice == self.all {
                return true;
            }
            let stage0 = self.all & !once & !twice;
            let outside = !self.s & self.all;
            let unstarted = stage0 & outside;
            let open_plain = once & outside;
            let closed_plain = twice & outside;
            let s_first = stage0 & self.s;
            let s_gap = once & self.s;
            let s_last = twice & self.s;
            let open_all = open_plain | s_first | s_last;
            let key = (
                once,
                twice,
                bits(open_plain).map(|v| self.waits[v] & s_gap).collect::<Vec<_>>(),
            );
            if self.failed.contains(&key) {
                return false;
            }
            for v in bits(self.all) {
                let bit = 1u32 << v;
                let nv = self.adj[v];
                let step = if bit & unstarted != 0 {
                    (open_all & !nv == 0 && closed_plain & nv == 0).then_some((once | bit, twice, Token::L(v)))
                } else if bit & open_plain != 0 {
                    (unstarted & nv == 0 && self.waits[v] & s_gap == 0).then_some((
                        once & !bit,
                        twice | bit,
                        Token::R(v),
                    ))
                } else if bit & s_first != 0 {
                    Some((once | bit, twice, Token::R(v)))
                } else if bit & s_gap != 0 {
                    ((open_plain | unstarted) & !nv == 0).then_some((once & !bit, twice | bit, Token::L(v)))
                } else {
                    None
                };
                if let Some((o, t, tok)) = step {
                    let saved = self.waits[v];
                    if bit & unstarted != 0 {
                        self.waits[v] = nv & s_gap;
                    }
                    self.path.push(tok);
                    if self.go(o, t) {
                        return true;
                    }
                    self.path.pop();
                    self.waits[v] = saved;
                }
            }
            self.failed.insert(key);
            false
        }
    }
    let n = adj.len();
    let all = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    for s in 0..=all {
        if s & !all != 0 {
            continue;
        }
        if bits(s).any(|v| s & !(1 << v) & !adj[v] != 0) {
            continue;
        }
        let mut search = Search {
            adj,
            s,
            all,
            waits: vec![0; n],
            failed: HashSet::new(),
            path: vec![Token::Origin],
        };
        if search.go(0, 0) {
            return Some(search.path);
        }
    }
    None
}

/// Permutation representations: fix the first line as a vertex sequence;
/// the edges then fix every pair's order in the second line, which must be
/// a transitive tournament (checked on every prefix).
fn permutation_search(adj: &[u32]) -> Option<OrderPair> {
    fn go(adj: &[u32], seq: &mut Vec<usize>, used: u32, before: &mut Vec<u32>) -> bool {
        let n = adj.len();
        if seq.len() == n {
            return true;
        }
        for v in 0..n {
            if used >> v & 1 == 1 {
                continue;
            }
            // before[a] has bit b when a precedes b in the second line
            let saved = before.clone();
            for &u in seq.iter() {
                if adj[v] >> u & 1 == 1 {
                    before[v] |= 1 << u;
                } else {
                    before[u] |= 1 << v;
                }
            }
            seq.push(v);
            let mut scores: Vec<u32> = seq.iter().map(|&a| before[a].count_ones()).collect();
            scores.sort_unstable();
            let transitive = scores.iter().enumerate().all(|(i, &s)| s as usize == i);
            if transitive && go(adj, seq, used | 1 << v, before) {
                return true;
            }
            seq.pop();
            *before = saved;
        }
        false
    }
    let n = adj.len();
    let mut seq = Vec::new();
    let mut before = vec![0u32; n];
    if !go(adj, &mut seq, 0, &mut before) {
        return None;
    }
    let mut second = seq.clone();
    second.sort_by_key(|&v| std::cmp::Reverse(before[v].count_ones()));
    let line = |vs: &[usize]| {
        let mut t = vec![Token::Bot];
        t.extend(vs.iter().map(|&v| Token::V(v)));
        t.push(Token::Top);
        t
    };
    Some(OrderPair::from_lines(line(&seq), line(&second)).unwrap())
}

/// Threshold representations: each vertex, in right-endpoint order, is
/// adjacent to all earlier vertices (and then in `W`) or to none of them.
fn threshold_search(adj: &[u32]) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    fn go(adj: &[u32], placed: u32, order: &mut Vec<usize>, failed: &mut HashSet<u32>) -> bool {
        let n = adj.len();
        if order.len() == n {
            return true;
        }
        if failed.contains(&placed) {
            return false;
        }
        for v in 0..n {
            if placed >> v & 1 == 1 {
                continue;
            }
            let nb = adj[v] & placed;
            if nb == 0 || nb == placed {
                order.push(v);
                if go(adj, placed | 1 << v, order, failed) {
                    return true;
                }
                order.pop();
            }
        }
        failed.insert(placed);
        false
    }
    let mut order = Vec::new();
    if !go(adj, 0, &mut order, &mut HashSet::new()) {
        return None;
    }
    let mut dominating = Vec::new();
    let mut placed = 0u32;
    for &v in &order {
        if placed != 0 && adj[v] & placed == placed {
            dominating.push(v);
        }
        placed |= 1 << v;
    }
    dominating.sort_unstable();
    Some((dominating, order))
}

/// The classic characterization: repeatedly remove an isolated or a
/// dominating vertex.
pub fn is_threshold_peel(g: &Graph) -> bool {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    for remaining in (1..=n).rev() {
        let pick = (0..n).find(|&v| alive[v] && (degree[v] == 0 || degree[v] == remaining - 1));
        match pick {
            None => return false,
            Some(v) => {
                alive[v] = false;
                for &u in g.neighbors(v) {
                    if alive[u] {
                        degree[u] -= 1;
                    }
                }
            }
        }
    }
    true
}

/// The graph a witness induces, for checking.
pub fn induced_graph(n: usize, w: &Witness) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            let meet = match w {
                Witness::Intervals(o) => crate::interval::vertices_meet(o, u, v),
                Witness::Permutation(p) => crate::order::crosses_permutation(u, v, p),
                Witness::Threshold { dominating, order } => {
                    let (pu, pv) = (
                        order.iter().position(|&a| a == u).unwrap(),
                        order.iter().position(|&a| a == v).unwrap(),
                    );
                    let later = if pu < pv { v } else { u };
                    dominating.contains(&later)
                }
            };
            if meet {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> Graph {
        Graph::path(4)
    }

    #[test]
    fn small_graphs_per_class() {
        let k1 = Graph::empty(1);
        for c in GraphClass::ALL {
            assert!(is_in_class(&k1, c).unwrap(), "{c}");
            assert!(is_in_class(&Graph::empty(0), c).unwrap(), "{c}");
        }
        let p4 = p4();
        for c in [
            GraphClass::Interval,
            GraphClass::ProperInterval,
            GraphClass::CircularArc,
            GraphClass::Permutation,
        ] {
            assert!(is_in_class(&p4, c).unwrap(), "{c}");
        }
        assert!(!is_in_class(&p4, GraphClass::TriviallyPerfect).unwrap());
        assert!(!is_in_class(&p4, GraphClass::Threshold).unwrap());
        let c4 = Graph::cycle(4);
        assert!(!is_in_class(&c4, GraphClass::Interval).unwrap());
        assert!(is_in_class(&c4, GraphClass::CircularArc).unwrap());
        assert!(!is_in_class(&Graph::star(3), GraphClass::ProperInterval).unwrap());
        assert!(is_in_class(&Graph::star(3), GraphClass::Threshold).unwrap());
    }

    #[test]
    fn brute_force_minimums() {
        let c4 = Graph::cycle(4);
        assert_eq!(min_edge_deletion_bruteforce(&c4, GraphClass::Interval), Ok(1));
        assert_eq!(min_edge_deletion_bruteforce(&c4, GraphClass::Threshold), Ok(2));
        assert_eq!(min_edge_deletion_bruteforce(&c4, GraphClass::TriviallyPerfect), Ok(2));
        assert_eq!(min_edge_deletion_bruteforce(&p4(), GraphClass::Threshold), Ok(1));
        assert_eq!(
            min_edge_deletion_bruteforce(&Graph::star(3), GraphClass::ProperInterval),
            Ok(1)
        );
        let c5 = Graph::cycle(5);
        assert_eq!(min_edge_deletion_bruteforce(&c5, GraphClass::CircularArc), Ok(0));
        assert_eq!(min_edge_deletion_bruteforce(&c5, GraphClass::Permutation), Ok(1));
    }

    #[test]
    fn refuses_large_graphs() {
        let g = Graph::path(DEFAULT_MAX_N + 1);
        assert!(matches!(
            is_in_class(&g, GraphClass::Interval),
            Err(OracleError::TooLarge { .. })
        ));
        assert!(is_in_class_capped(&g, GraphClass::Interval, 12).unwrap());
    }

    #[test]
    fn witnesses_induce_the_graph() {
        let graphs = [
            Graph::cycle(5),
            Graph::path(5),
            Graph::star(3),
            Graph::complete(4),
            Graph::cycle(4),
        ];
        for g in &graphs {
            for c in GraphClass::ALL {
                if let Some(w) = witness_capped(g, c, 8).unwrap() {
                    assert_eq!(&induced_graph(g.n(), &w), g, "{c} witness {w:?}");
                }
            }
        }
    }

    #[test]
    fn threshold_peel_agrees_on_small_graphs() {
        for n in 0..=5usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..1 << pairs.len() {
                let g = Graph::from_edges(n, bits(mask).map(|i| pairs[i])).unwrap();
                assert_eq!(
                    is_threshold_peel(&g),
                    is_in_class(&g, GraphClass::Threshold).unwrap(),
                    "{g:?}"
                );
            }
        }
    }
}
