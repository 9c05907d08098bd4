//! Permutation-model abstractions: two linear orders over the bag plus
//! forbidden areas anchored in both of them.

use std::fmt;

use crate::dp::ClassDp;
use crate::graph::{Graph, Vertex};
use crate::order::{crosses_permutation, enumerate_pair_extensions, OrderPair, Token};

/// A forbidden area: in line `i` it starts in the gap after `p[i]` and ends
/// in the gap after `q[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Area {
    pub p1: Token,
    pub q1: Token,
    pub p2: Token,
    pub q2: Token,
}

impl Area {
    pub fn new(p1: Token, q1: Token, p2: Token, q2: Token) -> Self {
        Area { p1, q1, p2, q2 }
    }

    fn p(self, i: usize) -> Token {
        if i == 0 {
            self.p1
        } else {
            self.p2
        }
    }

    fn q(self, i: usize) -> Token {
        if i == 0 {
            self.q1
        } else {
            self.q2
        }
    }

    /// Substitutes per line.
    fn map(self, f: impl Fn(usize, Token) -> Token) -> Self {
        Area {
            p1: f(0, self.p1),
            q1: f(0, self.q1),
            p2: f(1, self.p2),
            q2: f(1, self.q2),
        }
    }
}

impl fmt::Display for Area {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.p1, self.q1, self.p2, self.q2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermutationAbstraction {
    pub pair: OrderPair,
    pub forbidden: Vec<Area>,
    pub cost: usize,
}

impl fmt::Display for PermutationAbstraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {{", self.pair)?;
        for (i, a) in self.forbidden.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}} | c={}", self.cost)
    }
}

impl PermutationAbstraction {
    pub fn leaf() -> Self {
        PermutationAbstraction {
            pair: OrderPair::empty(),
            forbidden: Vec::new(),
            cost: 0,
        }
    }

    pub fn new(pair: OrderPair, mut forbidden: Vec<Area>, cost: usize) -> Self {
        forbidden.sort();
        forbidden.dedup();
        PermutationAbstraction { pair, forbidden, cost }
    }

    /// Parses `"B 1 2 T / B 2 1 T"` plus areas given as token quadruples.
    pub fn parse(pair: &str, areas: &[[&str; 4]], cost: usize) -> Result<Self, String> {
        let pair = OrderPair::parse(pair)?;
        let mut forbidden = Vec::new();
        for a in areas {
            forbidden.push(Area::new(a[0].parse()?, a[1].parse()?, a[2].parse()?, a[3].parse()?));
        }
        Ok(PermutationAbstraction::new(pair, forbidden, cost))
    }

    pub fn check_invariants(&self) -> Result<(), String> {
        self.pair.check()?;
        let pr = &self.pair;
        for a in &self.forbidden {
            for i in 0..2 {
                let (p, q) = (a.p(i), a.q(i));
                if !pr.line(i).contains(&p) || !pr.line(i).contains(&q) {
                    return Err(format!("area {a} anchored outside {pr}"));
                }
                if !pr.le(i, p, q) {
                    return Err(format!("area {a} ends before it starts in line {}", i + 1));
                }
                if q == Token::Top {
                    return Err(format!("area {a} ends at T"));
                }
            }
        }
        for (i, a) in self.forbidden.iter().enumerate() {
            for b in &self.forbidden[i + 1..] {
                if areas_intersect(pr, *a, *b) {
                    return Err(format!("areas {a} and {b} intersect"));
                }
            }
        }
        if self.forbidden.windows(2).any(|w| w[0] >= w[1]) {
            return Err("areas not sorted".into());
        }
        Ok(())
    }
}

/// Some line starts `a` before `b` ends, and some line starts `b` before
/// `a` ends.
pub fn areas_intersect(pair: &OrderPair, a: Area, b: Area) -> bool {
    (0..2).any(|i| pair.lt(i, a.p(i), b.q(i))) && (0..2).any(|j| pair.lt(j, b.p(j), a.q(j)))
}

/// Whether `x`, already inserted in `pair`, avoids its bag non-neighbours
/// and every forbidden area.
pub fn p_respects(pair: &OrderPair, x: Vertex, g: &Graph, forbidden: &[Area]) -> bool {
    let vx = Token::V(x);
    let edges_ok = pair
        .vertices()
        .into_iter()
        .all(|u| u == x || g.has_edge(x, u) || !crosses_permutation(u, x, pair));
    edges_ok
        && forbidden
            .iter()
            .all(|a| !((0..2).any(|i| pair.lt(i, pair.succ(i, a.p(i)), vx)) && (0..2).any(|j| pair.lt(j, vx, a.q(j)))))
}

pub fn p_introduce(abs: &PermutationAbstraction, x: Vertex, g: &Graph) -> Vec<PermutationAbstraction> {
    let vx = Token::V(x);
    let mut out = Vec::new();
    for ext in enumerate_pair_extensions(&abs.pair, x) {
        if !p_respects(&ext, x, g, &abs.forbidden) {
            continue;
        }
        let y = [ext.pred(0, vx), ext.pred(1, vx)];
        let sub = |i: usize, t: Token| if t == y[i] { vx } else { t };
        let (mut left, mut middle, mut right) = (Vec::new(), Vec::new(), Vec::new());
        for &a in &abs.forbidden {
            if (0..2).any(|i| ext.lt(i, a.p(i), y[i])) {
                left.push(a);
            } else if (0..2).any(|i| ext.lt(i, y[i], a.q(i))) {
                right.push(a.map(sub));
            } else {
                debug_assert!((0..2).all(|i| a.p(i) == y[i] && a.q(i) == y[i]));
                middle.push(a);
            }
        }
        left.extend(right);
        if !middle.is_empty() {
            let mut moved = left.clone();
            moved.extend(middle.iter().map(|a| a.map(sub)));
            out.push(PermutationAbstraction::new(ext.clone(), moved, abs.cost));
            left.extend(middle);
        }
        out.push(PermutationAbstraction::new(ext, left, abs.cost));
    }
    out
}

pub fn p_forget(abs: &PermutationAbstraction, x: Vertex, g: &Graph) -> PermutationAbstraction {
    let pr = &abs.pair;
    let vx = Token::V(x);
    let cost = abs.cost
        + pr.vertices()
            .into_iter()
            .filter(|&u| u != x && g.has_edge(x, u) && !crosses_permutation(u, x, pr))
            .count();
    let xs = [pr.pred(0, vx), pr.pred(1, vx)];
    let sub = |i: usize, t: Token| if t == vx { xs[i] } else { t };
    let (mut y, mut z) = (xs, xs);
    let mut kept = Vec::new();
    for &a in &abs.forbidden {
        let meets = (0..2).any(|i| pr.lt(i, a.p(i), vx) && pr.le(1 - i, vx, a.q(1 - i)));
        if meets {
            for i in 0..2 {
                y[i] = pr.min(i, y[i], sub(i, a.p(i)));
                z[i] = pr.max(i, z[i], sub(i, a.q(i)));
            }
        } else {
            kept.push(a.map(sub));
        }
    }
    kept.push(Area::new(y[0], z[0], y[1], z[1]));
    PermutationAbstraction::new(pr.without_vertex(x), kept, cost)
}

pub fn p_join(a: &PermutationAbstraction, b: &PermutationAbstraction) -> Option<PermutationAbstraction> {
    if a.pair != b.pair {
        return None;
    }
    let clash = a
        .forbidden
        .iter()
        .any(|&s| b.forbidden.iter().any(|&t| areas_intersect(&a.pair, s, t)));
    if clash {
        return None;
    }
    let mut forbidden = a.forbidden.clone();
    forbidden.extend(&b.forbidden);
    Some(PermutationAbstraction::new(a.pair.clone(), forbidden, a.cost + b.cost))
}

pub fn p_dominates(a: &PermutationAbstraction, b: &PermutationAbstraction) -> bool {
    let pr = &a.pair;
    a.pair == b.pair
        && a.cost <= b.cost
        && a.forbidden.iter().all(|&s| {
            b.forbidden
                .iter()
                .any(|&t| (0..2).all(|i| pr.le(i, t.p(i), s.p(i)) && pr.le(i, s.q(i), t.q(i))))
        })
}

pub fn p_reduce(entries: Vec<PermutationAbstraction>) -> Vec<PermutationAbstraction> {
    crate::dp::reduce_by(entries, |a| a.pair.clone(), |a| a.cost, p_dominates)
}

pub struct PermutationDp<'g> {
    pub graph: &'g Graph,
}

impl ClassDp for PermutationDp<'_> {
    type State = PermutationAbstraction;
    type Key = OrderPair;

    fn leaf(&self) -> PermutationAbstraction {
        PermutationAbstraction::leaf()
    }

    fn introduce(&self, s: &PermutationAbstraction, x: Vertex) -> Vec<PermutationAbstraction> {
        p_introduce(s, x, self.graph)
    }

    fn forget(&self, s: &PermutationAbstraction, x: Vertex) -> Vec<PermutationAbstraction> {
        vec![p_forget(s, x, self.graph)]
    }

    fn join(&self, a: &PermutationAbstraction, b: &PermutationAbstraction) -> Option<PermutationAbstraction> {
        p_join(a, b)
    }

    fn key(&self, s: &PermutationAbstraction) -> OrderPair {
        s.pair.clone()
    }

    fn cost(&self, s: &PermutationAbstraction) -> usize {
        s.cost
    }

    fn lower_bound(&self, s: &PermutationAbstraction) -> usize {
        let vs = s.pair.vertices();
        let lost = vs
            .iter()
            .enumerate()
            .flat_map(|(i, &u)| vs[i + 1..].iter().map(move |&v| (u, v)))
            .filter(|&(u, v)| self.graph.has_edge(u, v) && !crosses_permutation(u, v, &s.pair))
            .count();
        s.cost + lost
    }

    fn dominates(&self, a: &PermutationAbstraction, b: &PermutationAbstraction) -> bool {
        p_dominates(a, b)
    }

    fn check(&self, s: &PermutationAbstraction) -> Result<(), String> {
        s.check_invariants()
    }
}
