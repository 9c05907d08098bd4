//! Test and benchmark instances.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Edge, Graph, Vertex};

fn all_pairs(n: usize) -> Vec<Edge> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn go(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(k + 1, p, out);
            p.swap(k, i);
        }
    }
    go(0, &mut p, &mut out);
    out
}

/// One graph per isomorphism class on `n` vertices, optionally only the
/// connected ones. Practical up to `n = 6`.
pub fn graphs_up_to_isomorphism(n: usize, connected_only: bool) -> Vec<Graph> {
    assert!(n <= 7, "enumeration up to isomorphism is only meant for tiny n");
    let pairs = all_pairs(n);
    let index = |u: usize, v: usize| pairs.iter().position(|&e| e == (u.min(v), u.max(v))).unwrap();
    let perms = permutations(n);
    let images: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect())
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let canon = images
            .iter()
            .map(|img| {
                (0..pairs.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .fold(0u32, |m, i| m | 1 << img[i])
            })
            .min()
            .unwrap_or(0);
        if !seen.insert(canon) || canon != mask {
            continue;
        }
        let g = Graph::from_edges(n, (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i])).unwrap();
        if !connected_only || g.is_connected() {
            out.push(g);
        }
    }
    out
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<Edge> = all_pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, edges).unwrap()
}

/// A random partial `k`-tree: a random `k`-tree with each edge kept with
/// probability `keep`, vertices relabelled at random. Returns the graph and
/// an elimination order of width at most `k`.
pub fn partial_ktree(n: usize, k: usize, keep: f64, seed: u64) -> (Graph, Vec<Vertex>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut label: Vec<Vertex> = (0..n).collect();
    label.shuffle(&mut rng);
    let mut edges = Vec::new();
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let base = n.min(k + 1);
    for v in 0..base {
        for u in 0..v {
            edges.push((u, v));
        }
    }
    if base == k + 1 {
        for skip in 0..base {
            cliques.push((0..base).filter(|&u| u != skip).collect());
        }
    }
    for v in base..n {
        let c = cliques[rng.gen_range(0..cliques.len())].clone();
        for &u in &c {
            edges.push((u, v));
        }
        for skip in 0..c.len() {
            let mut next: Vec<usize> = c.iter().copied().filter(|&u| u != c[skip]).collect();
            next.push(v);
            cliques.push(next);
        }
    }
    let kept = edges
        .into_iter()
        .filter(|_| rng.gen_bool(keep))
        .map(|(u, v)| (label[u].min(label[v]), label[u].max(label[v])));
    let g = Graph::from_edges(n, kept).unwrap();
    let order = (0..n).rev().map(|v| label[v]).collect();
    (g, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{decompose_with_order, validate_decomposition};

    #[test]
    fn counts_of_connected_graphs() {
        let counts: Vec<usize> = (1..=5).map(|n| graphs_up_to_isomorphism(n, true).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
        assert_eq!(graphs_up_to_isomorphism(4, false).len(), 11);
    }

    #[test]
    fn gnp_is_seeded() {
        assert_eq!(gnp(7, 0.5, 3), gnp(7, 0.5, 3));
        assert_eq!(gnp(6, 0.0, 1).m(), 0);
        assert_eq!(gnp(6, 1.0, 1).m(), 15);
    }

    #[test]
    fn partial_ktrees_have_small_width() {
        for seed in 0..10 {
            let (g, order) = partial_ktree(40, 3, 0.8, seed);
            let td = decompose_with_order(&g, &order);
            assert!(validate_decomposition(&g, &td).unwrap() <= 3);
        }
    }
}
