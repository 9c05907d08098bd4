//! Threshold-model abstractions `(Y', π, b, p, c)`.
//!
//! A representation is a set `W` plus an order of right endpoints; `u` and
//! `v` are adjacent iff the later of the two is in `W`.

use std::fmt;

use crate::dp::ClassDp;
use crate::graph::{Graph, Vertex};
use crate::order::Token;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThresholdAbstraction {
    /// Bag members of `W`, sorted.
    pub dominating: Vec<Vertex>,
    /// `B`, right endpoints of the bag, `T`.
    pub order: Vec<Token>,
    /// Some forgotten vertex is in `W`.
    pub flag: bool,
    pub pivot: Token,
    pub cost: usize,
}

impl fmt::Display for ThresholdAbstraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.dominating.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "}} |")?;
        for t in &self.order {
            write!(f, " {t}")?;
        }
        write!(f, " | b={} p={} | c={}", u8::from(self.flag), self.pivot, self.cost)
    }
}

fn pos(order: &[Token], t: Token) -> usize {
    order
        .iter()
        .position(|&a| a == t)
        .unwrap_or_else(|| panic!("token {t} not in order"))
}

fn lt(order: &[Token], a: Token, b: Token) -> bool {
    pos(order, a) < pos(order, b)
}

impl ThresholdAbstraction {
    pub fn leaf() -> Self {
        ThresholdAbstraction {
            dominating: Vec::new(),
            order: vec![Token::Bot, Token::Top],
            flag: false,
            pivot: Token::Bot,
            cost: 0,
        }
    }

    /// Parses e.g. `("1", "B r1 r2 T", 0, "r1", 3)`.
    pub fn parse(dominating: &str, order: &str, flag: bool, pivot: &str, cost: usize) -> Result<Self, String> {
        let mut dom = Vec::new();
        for s in dominating.split([',', ' ']).filter(|s| !s.is_empty()) {
            let v: usize = s.parse().map_err(|_| format!("bad vertex {s:?}"))?;
            if v == 0 {
                return Err("vertices are 1-indexed".into());
            }
            dom.push(v - 1);
        }
        dom.sort_unstable();
        let order = order
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<Token>, String>>()?;
        let a = ThresholdAbstraction {
            dominating: dom,
            order,
            flag,
            pivot: pivot.parse()?,
            cost,
        };
        a.check_invariants()?;
        Ok(a)
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.order.iter().filter_map(|t| t.vertex()).collect()
    }

    pub fn in_w(&self, v: Vertex) -> bool {
        self.dominating.binary_search(&v).is_ok()
    }

    pub fn check_invariants(&self) -> Result<(), String> {
        let o = &self.order;
        if o.len() < 2 || o[0] != Token::Bot || o[o.len() - 1] != Token::Top {
            return Err(format!("order {o:?} lacks sentinels"));
        }
        let mut seen = Vec::new();
        for t in &o[1..o.len() - 1] {
            match t {
                Token::R(v) => {
                    if seen.contains(v) {
                        return Err(format!("vertex {} twice", v + 1));
                    }
                    seen.push(*v);
                }
                _ => return Err(format!("unexpected token {t} in threshold order")),
            }
        }
        if self.dominating.windows(2).any(|w| w[0] >= w[1]) {
            return Err("dominating set not sorted".into());
        }
        if let Some(v) = self.dominating.iter().find(|v| !seen.contains(v)) {
            return Err(format!("dominating vertex {} not in bag", v + 1));
        }
        if self.pivot == Token::Top || !o.contains(&self.pivot) {
            return Err(format!("pivot {} not a bag token", self.pivot));
        }
        Ok(())
    }
}

/// Whether `u` and `v` are adjacent in the representation.
pub fn t_intersects(u: Vertex, v: Vertex, dominating: &[Vertex], order: &[Token]) -> bool {
    let later = if lt(order, Token::R(u), Token::R(v)) { v } else { u };
    dominating.contains(&later)
}

pub fn t_introduce(abs: &ThresholdAbstraction, x: Vertex, g: &Graph) -> Vec<ThresholdAbstraction> {
    let rx = Token::R(x);
    let bag = abs.vertices();
    let succ_p = abs.order[pos(&abs.order, abs.pivot) + 1];
    let mut out = Vec::new();
    for i in 1..abs.order.len() {
        let mut order = abs.order.clone();
        order.insert(i, rx);
        for join_w in [false, true] {
            let mut dominating = abs.dominating.clone();
            if join_w {
                dominating.push(x);
                dominating.sort_unstable();
            }
            let respects = bag
                .iter()
                .all(|&u| g.has_edge(x, u) || !t_intersects(x, u, &dominating, &order));
            if !respects {
                continue;
            }
            let pivot = if !abs.flag {
                if join_w && !lt(&order, rx, succ_p) {
                    continue;
                }
                if lt(&order, abs.pivot, rx) && lt(&order, rx, succ_p) {
                    rx
                } else {
                    abs.pivot
                }
            } else {
                if join_w || !lt(&order, abs.pivot, rx) {
                    continue;
                }
                abs.pivot
            };
            out.push(ThresholdAbstraction {
                dominating,
                order: order.clone(),
                flag: abs.flag,
                pivot,
                cost: abs.cost,
            });
        }
    }
    out
}

pub fn t_forget(abs: &ThresholdAbstraction, x: Vertex, g: &Graph) -> ThresholdAbstraction {
    let rx = Token::R(x);
    let o = &abs.order;
    let cost = abs.cost
        + abs
            .vertices()
            .into_iter()
            .filter(|&u| u != x && g.has_edge(x, u) && !t_intersects(x, u, &abs.dominating, o))
            .count();
    let in_y = abs.in_w(x);
    let pred = o[pos(o, rx) - 1];
    let flag = in_y || abs.flag;
    let pivot = if !flag {
        if lt(o, abs.pivot, pred) {
            abs.pivot
        } else {
            pred
        }
    } else if !abs.flag || (lt(o, abs.pivot, rx) && in_y) || abs.pivot == rx {
        pred
    } else {
        abs.pivot
    };
    ThresholdAbstraction {
        dominating: abs.dominating.iter().copied().filter(|&v| v != x).collect(),
        order: o.iter().copied().filter(|&t| t != rx).collect(),
        flag,
        pivot,
        cost,
    }
}

/// Two sides that both forgot a member of `W` never combine: those two
/// vertices would be adjacent.
pub fn t_join(a: &ThresholdAbstraction, b: &ThresholdAbstraction) -> Option<ThresholdAbstraction> {
    if a.dominating != b.dominating || a.order != b.order {
        return None;
    }
    let o = &a.order;
    let (flag, pivot) = match (a.flag, b.flag) {
        (false, false) => (false, if lt(o, a.pivot, b.pivot) { a.pivot } else { b.pivot }),
        (true, false) if !lt(o, b.pivot, a.pivot) => (true, a.pivot),
        (false, true) if !lt(o, a.pivot, b.pivot) => (true, b.pivot),
        _ => return None,
    };
    Some(ThresholdAbstraction {
        dominating: a.dominating.clone(),
        order: o.clone(),
        flag,
        pivot,
        cost: a.cost + b.cost,
    })
}

/// `a` is at least as good as `b`.
pub fn t_dominates(a: &ThresholdAbstraction, b: &ThresholdAbstraction) -> bool {
    if a.dominating != b.dominating || a.order != b.order || a.cost > b.cost {
        return false;
    }
    let o = &a.order;
    match (a.flag, b.flag) {
        (false, false) => !lt(o, a.pivot, b.pivot),
        (true, true) => !lt(o, b.pivot, a.pivot),
        (false, true) => true,
        (true, false) => false,
    }
}

pub fn t_reduce(entries: Vec<ThresholdAbstraction>) -> Vec<ThresholdAbstraction> {
    crate::dp::reduce_by(
        entries,
        |a| (a.dominating.clone(), a.order.clone()),
        |a| a.cost,
        t_dominates,
    )
}

pub struct ThresholdDp<'g> {
    pub graph: &'g Graph,
}

impl ClassDp for ThresholdDp<'_> {
    type State = ThresholdAbstraction;
    type Key = (Vec<Vertex>, Vec<Token>);

    fn leaf(&self) -> ThresholdAbstraction {
        ThresholdAbstraction::leaf()
    }

    fn introduce(&self, s: &ThresholdAbstraction, x: Vertex) -> Vec<ThresholdAbstraction> {
        t_introduce(s, x, self.graph)
    }

    fn forget(&self, s: &ThresholdAbstraction, x: Vertex) -> Vec<ThresholdAbstraction> {
        vec![t_forget(s, x, self.graph)]
    }

    fn join(&self, a: &ThresholdAbstraction, b: &ThresholdAbstraction) -> Option<ThresholdAbstraction> {
        t_join(a, b)
    }

    fn key(&self, s: &ThresholdAbstraction) -> (Vec<Vertex>, Vec<Token>) {
        (s.dominating.clone(), s.order.clone())
    }

    fn cost(&self, s: &ThresholdAbstraction) -> usize {
        s.cost
    }

    fn lower_bound(&self, s: &ThresholdAbstraction) -> usize {
        let vs = s.vertices();
        let lost = vs
            .iter()
            .enumerate()
            .flat_map(|(i, &u)| vs[i + 1..].iter().map(move |&v| (u, v)))
            .filter(|&(u, v)| self.graph.has_edge(u, v) && !t_intersects(u, v, &s.dominating, &s.order))
            .count();
        s.cost + lost
    }

    fn dominates(&self, a: &ThresholdAbstraction, b: &ThresholdAbstraction) -> bool {
        t_dominates(a, b)
    }

    fn check(&self, s: &ThresholdAbstraction) -> Result<(), String> {
        s.check_invariants()
    }
}
