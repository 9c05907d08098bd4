//! Certificates: a concrete representation rebuilt along the chosen DP
//! states, checked against the graph.
//!
//! Every node keeps a concrete representation of the vertices introduced
//! below it. At each step the representation is extended so that its own
//! abstraction is at least as good as the state the DP picked there.

use std::collections::BTreeSet;
use std::fmt;

use crate::class::GraphClass;
use crate::dp::{ClassDp, DpRun};
use crate::graph::{Edge, Graph, Vertex};
use crate::interval::{Closure, IntervalAbstraction, IntervalDp, IntervalMode};
use crate::nice::{KindLabel, NiceTreeDecomposition, NodeKind};
use crate::oracle::{induced_graph, Witness};
use crate::order::{EndpointOrder, OrderMode, OrderPair, Token};
use crate::permutation::{Area, PermutationAbstraction, PermutationDp};
use crate::threshold::{ThresholdAbstraction, ThresholdDp};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub class: GraphClass,
    pub witness: Witness,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Witness::Intervals(o) => write!(f, "{o}"),
            Witness::Permutation(p) => write!(f, "{p}"),
            Witness::Threshold { dominating, order } => {
                let list = |vs: &[Vertex]| vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ");
                write!(f, "W = {{{}}} | {}", list(dominating), list(order))
            }
        }
    }
}

/// A DP whose states can be turned back into representations.
pub trait Realizer: ClassDp {
    type Concrete: Clone;

    fn concrete_leaf(&self) -> Self::Concrete;
    /// Every admissible way of adding `x` that matches the target's bag part.
    fn introduce_candidates(&self, c: &Self::Concrete, x: Vertex, target: &Self::State) -> Vec<Self::Concrete>;
    fn concrete_forget(&self, c: Self::Concrete, x: Vertex) -> Self::Concrete;
    fn concrete_join(&self, a: &Self::Concrete, b: &Self::Concrete) -> Result<Self::Concrete, String>;
    /// The abstraction of a concrete representation, with the given cost.
    fn abstraction(&self, c: &Self::Concrete, cost: usize) -> Self::State;
    fn certificate(&self, c: &Self::Concrete) -> Certificate;
}

/// Rebuilds a representation along `chosen` (one entry per node).
pub fn realize<D: Realizer>(
    dp: &D,
    ntd: &NiceTreeDecomposition,
    run: &DpRun<D::State>,
    chosen: &[usize],
) -> Result<Certificate, String> {
    let n = ntd.nodes.len();
    let mut conc: Vec<Option<D::Concrete>> = vec![None; n];
    for t in 0..n {
        let node = &ntd.nodes[t];
        let target = &run.tables[t][chosen[t]].state;
        let cost = dp.cost(target);
        let fits = |c: &D::Concrete| dp.dominates(&dp.abstraction(c, cost), target);
        let mut child = |i: usize| conc[node.children[i]].take().expect("child realized first");
        let c = match node.kind {
            NodeKind::Leaf => dp.concrete_leaf(),
            NodeKind::Introduce(x) => {
                let prev = child(0);
                dp.introduce_candidates(&prev, x, target)
                    .into_iter()
                    .find(|c| fits(c))
                    .ok_or_else(|| format!("node {t} {}: no placement matches {target}", KindLabel(node.kind)))?
            }
            NodeKind::Forget(x) => dp.concrete_forget(child(0), x),
            NodeKind::Join => {
                let (a, b) = (child(0), child(1));
                dp.concrete_join(&a, &b)
                    .map_err(|e| format!("node {t} {}: {e}", KindLabel(node.kind)))?
            }
        };
        if !fits(&c) {
            return Err(format!(
                "node {t} {}: representation {} does not match {target}",
                KindLabel(node.kind),
                dp.abstraction(&c, cost)
            ));
        }
        conc[t] = Some(c);
    }
    let root = conc[n - 1].take().ok_or("empty decomposition")?;
    Ok(dp.certificate(&root))
}

/// Checks that the certificate realizes a subgraph of `g` missing exactly
/// `deletions` edges and has the class's shape. Returns the missing edges.
pub fn check_certificate(g: &Graph, cert: &Certificate, deletions: usize) -> Result<Vec<Edge>, String> {
    let covered = match &cert.witness {
        Witness::Intervals(o) => o.vertices().len(),
        Witness::Permutation(p) => p.vertices().len(),
        Witness::Threshold { order, .. } => order.len(),
    };
    if covered != g.n() {
        return Err(format!("certificate places {covered} of {} vertices", g.n()));
    }
    if let Witness::Intervals(o) = &cert.witness {
        shape_ok(cert.class, o)?;
    }
    let h = induced_graph(g.n(), &cert.witness);
    if let Some((u, v)) = h.edges().find(|&(u, v)| !g.has_edge(u, v)) {
        return Err(format!("certificate adds edge {{{}, {}}}", u + 1, v + 1));
    }
    let deleted: Vec<Edge> = g.edges().filter(|&(u, v)| !h.has_edge(u, v)).collect();
    if deleted.len() != deletions {
        return Err(format!(
            "certificate deletes {} edges, expected {deletions}",
            deleted.len()
        ));
    }
    Ok(deleted)
}

fn shape_ok(class: GraphClass, o: &EndpointOrder) -> Result<(), String> {
    let vs = o.vertices();
    for &u in &vs {
        for &v in &vs {
            if u == v {
                continue;
            }
            let (lu, ru, lv, rv) = (
                o.pos(Token::L(u)),
                o.pos(Token::R(u)),
                o.pos(Token::L(v)),
                o.pos(Token::R(v)),
            );
            let contains = lu < lv && rv < ru;
            let crossing = lu < lv && lv < ru && ru < rv;
            if class == GraphClass::ProperInterval && contains {
                return Err(format!("interval {} contains {}", u + 1, v + 1));
            }
            if class == GraphClass::TriviallyPerfect && crossing {
                return Err(format!("intervals {} and {} overlap without nesting", u + 1, v + 1));
            }
        }
    }
    Ok(())
}

fn is_separator(t: Token, bag: &BTreeSet<Vertex>) -> bool {
    t.vertex().is_none_or(|v| bag.contains(&v))
}

/// For every index, the closest separator at or before it.
fn last_separators(seq: &[Token], bag: &BTreeSet<Vertex>) -> Vec<Token> {
    let mut out = Vec::with_capacity(seq.len());
    let mut last = seq[0];
    for &t in seq {
        if is_separator(t, bag) {
            last = t;
        }
        out.push(last);
    }
    out
}

/// Splits a sequence into separators, each followed by its gap's content.
fn gaps(seq: &[Token], bag: &BTreeSet<Vertex>) -> Vec<(usize, Vec<usize>)> {
    let mut out: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, &t) in seq.iter().enumerate() {
        if is_separator(t, bag) {
            out.push((i, Vec::new()));
        } else {
            out.last_mut().expect("sequence starts with a separator").1.push(i);
        }
    }
    out
}

// Interval family. A concrete representation is the full endpoint sequence
// (starting at `B` or `O`); coordinate `2i` is token `i`, `2i + 1` the gap
// after it.

#[derive(Debug, Clone)]
pub struct IntervalConcrete {
    seq: Vec<Token>,
    bag: BTreeSet<Vertex>,
}

/// How many forgotten intervals cover each coordinate.
fn coverage(seq: &[Token], bag: &BTreeSet<Vertex>, circular: bool) -> Vec<usize> {
    let m = 2 * seq.len();
    let mut cov = vec![0usize; m];
    for (a, &t) in seq.iter().enumerate() {
        let Token::L(v) = t else { continue };
        if bag.contains(&v) {
            continue;
        }
        let b = seq.iter().position(|&u| u == Token::R(v)).expect("r follows l");
        if a < b {
            cov[2 * a..=2 * b].iter_mut().for_each(|c| *c += 1);
        } else {
            debug_assert!(circular);
            cov[2 * a..].iter_mut().for_each(|c| *c += 1);
            cov[..=2 * b].iter_mut().for_each(|c| *c += 1);
        }
    }
    cov
}

fn interval_abstraction(mode: OrderMode, c: &IntervalConcrete, cost: usize) -> IntervalAbstraction {
    let circular = mode == OrderMode::Circular;
    let seq = &c.seq;
    let tokens: Vec<Token> = seq.iter().copied().filter(|&t| is_separator(t, &c.bag)).collect();
    let order = EndpointOrder::from_tokens(mode, tokens).expect("projection is an order");
    let cov = coverage(seq, &c.bag, circular);
    let m = cov.len();
    let Some(free) = cov.iter().position(|&d| d == 0) else {
        return IntervalAbstraction::full(order, cost);
    };
    let anchor = last_separators(seq, &c.bag);
    let mut closures = Vec::new();
    let mut run: Option<(usize, bool)> = None;
    for k in 1..=m {
        let coord = (free + k) % m;
        if cov[coord] > 0 {
            let (_, wraps) = run.get_or_insert((coord, false));
            *wraps |= coord == 0 && circular;
        } else if let Some((s, wraps)) = run.take() {
            let e = (coord + m - 1) % m;
            closures.push(Closure {
                start: anchor[s / 2],
                end: anchor[e / 2],
                wraps,
            });
        }
    }
    IntervalAbstraction::new(order, closures, cost)
}

impl IntervalDp<'_> {
    fn circular(&self) -> bool {
        self.mode == IntervalMode::Circular
    }
}

impl IntervalConcrete {
    /// Puts the origin of a circular sequence right before the left
    /// endpoint of the smallest bag vertex, as the abstraction does.
    fn place_origin(&mut self) {
        let Some(&first) = self.bag.iter().next() else { return };
        let real: Vec<Token> = self.seq[1..].to_vec();
        let r = real
            .iter()
            .position(|&t| t == Token::L(first))
            .expect("bag vertex placed");
        self.seq = std::iter::once(Token::Origin)
            .chain(real[r..].iter().copied())
            .chain(real[..r].iter().copied())
            .collect();
    }
}

impl Realizer for IntervalDp<'_> {
    type Concrete = IntervalConcrete;

    fn concrete_leaf(&self) -> IntervalConcrete {
        IntervalConcrete {
            seq: EndpointOrder::empty(self.mode.order_mode()).tokens(),
            bag: BTreeSet::new(),
        }
    }

    fn introduce_candidates(
        &self,
        c: &IntervalConcrete,
        x: Vertex,
        target: &IntervalAbstraction,
    ) -> Vec<IntervalConcrete> {
        let circular = self.circular();
        let n = c.seq.len();
        let cov = coverage(&c.seq, &c.bag, circular);
        let forgotten = |i: usize| !is_separator(c.seq[i], &c.bag);
        // slot `s` sits in the gap after token `s - 1`
        let last_slot = if circular { n } else { n - 1 };
        let mut bag = c.bag.clone();
        bag.insert(x);
        let mut out = Vec::new();
        for a in 1..=last_slot {
            if cov[2 * a - 1] > 0 {
                continue;
            }
            let max_steps = if circular { n } else { last_slot - a };
            for k in 0..=max_steps {
                if k > 0 && forgotten((a + k - 1) % n) {
                    break;
                }
                let b = if circular { (a - 1 + k) % n + 1 } else { a + k };
                let mut seq = c.seq.clone();
                if b > a || k == 0 {
                    seq.insert(b, Token::R(x));
                    seq.insert(a, Token::L(x));
                } else {
                    seq.insert(a, Token::L(x));
                    seq.insert(b, Token::R(x));
                }
                let mut cand = IntervalConcrete { seq, bag: bag.clone() };
                if circular {
                    cand.place_origin();
                }
                let projected: Vec<Token> = cand.seq.iter().copied().filter(|&t| is_separator(t, &bag)).collect();
                if projected == target.order.tokens() {
                    out.push(cand);
                }
            }
        }
        out
    }

    fn concrete_forget(&self, mut c: IntervalConcrete, x: Vertex) -> IntervalConcrete {
        c.bag.remove(&x);
        if self.circular() && c.bag.is_empty() {
            let cov = coverage(&c.seq, &c.bag, true);
            if let Some(s) = (1..=c.seq.len()).find(|&s| cov[2 * s - 1] == 0) {
                let mut seq = vec![Token::Origin];
                seq.extend_from_slice(&c.seq[s..]);
                seq.extend_from_slice(&c.seq[1..s]);
                c.seq = seq;
            }
        } else if self.circular() {
            c.place_origin();
        }
        c
    }

    fn concrete_join(&self, a: &IntervalConcrete, b: &IntervalConcrete) -> Result<IntervalConcrete, String> {
        let circular = self.circular();
        let split = |c: &IntervalConcrete| {
            let cov = coverage(&c.seq, &c.bag, circular);
            gaps(&c.seq, &c.bag)
                .into_iter()
                .map(|(sep, content)| {
                    let mut zeros: Vec<usize> = Vec::new();
                    if cov[2 * sep + 1] == 0 {
                        zeros.push(0);
                    }
                    for (k, &i) in content.iter().enumerate() {
                        if cov[2 * i + 1] == 0 {
                            zeros.push(k + 1);
                        }
                    }
                    let tokens: Vec<Token> = content.iter().map(|&i| c.seq[i]).collect();
                    let pieces = match (zeros.first(), zeros.last()) {
                        (Some(&z0), Some(&z1)) => {
                            Some([tokens[..z0].to_vec(), tokens[z0..z1].to_vec(), tokens[z1..].to_vec()])
                        }
                        _ => None,
                    };
                    (c.seq[sep], tokens, pieces)
                })
                .collect::<Vec<_>>()
        };
        let (ga, gb) = (split(a), split(b));
        if ga.len() != gb.len() {
            return Err("sides have different bags".into());
        }
        let mut seq = Vec::new();
        for ((sa, ta, pa), (sb, tb, pb)) in ga.into_iter().zip(gb) {
            if sa != sb {
                return Err(format!("sides disagree on the bag order at {sa} / {sb}"));
            }
            seq.push(sa);
            match (pa, pb) {
                (None, _) if tb.is_empty() => seq.extend(ta),
                (_, None) if ta.is_empty() => seq.extend(tb),
                (Some([p1, m1, s1]), Some([p2, m2, s2])) => {
                    if (!p1.is_empty() && !p2.is_empty()) || (!s1.is_empty() && !s2.is_empty()) {
                        return Err(format!("forgotten intervals of both sides cover the gap after {sa}"));
                    }
                    for part in [p1, p2, m1, m2, s1, s2] {
                        seq.extend(part);
                    }
                }
                _ => return Err(format!("forgotten intervals of both sides meet in the gap after {sa}")),
            }
        }
        Ok(IntervalConcrete {
            seq,
            bag: a.bag.clone(),
        })
    }

    fn abstraction(&self, c: &IntervalConcrete, cost: usize) -> IntervalAbstraction {
        interval_abstraction(self.mode.order_mode(), c, cost)
    }

    fn certificate(&self, c: &IntervalConcrete) -> Certificate {
        let order = EndpointOrder::from_tokens(self.mode.order_mode(), c.seq.clone()).expect("valid sequence");
        let class = match self.mode {
            IntervalMode::Interval => GraphClass::Interval,
            IntervalMode::Proper => GraphClass::ProperInterval,
            IntervalMode::Nested => GraphClass::TriviallyPerfect,
            IntervalMode::Circular => GraphClass::CircularArc,
        };
        Certificate {
            class,
            witness: Witness::Intervals(order),
        }
    }
}

// Permutation: both lines over every introduced vertex.

#[derive(Debug, Clone)]
pub struct PermutationConcrete {
    lines: [Vec<Token>; 2],
    bag: BTreeSet<Vertex>,
}

impl PermutationConcrete {
    fn forgotten(&self, i: usize) -> Vec<Vertex> {
        self.lines[i]
            .iter()
            .filter_map(|t| t.vertex())
            .filter(|v| !self.bag.contains(v))
            .collect()
    }

    /// Forgotten vertices grouped into crossing components, left to right.
    fn components(&self) -> Vec<Vec<Vertex>> {
        let (f1, f2) = (self.forgotten(0), self.forgotten(1));
        let rank = |v: Vertex| f2.iter().position(|&u| u == v).expect("same vertices");
        let mut out = Vec::new();
        let (mut start, mut reach) = (0, 0);
        for (k, &v) in f1.iter().enumerate() {
            reach = reach.max(rank(v));
            if reach == k {
                out.push(f1[start..=k].to_vec());
                start = k + 1;
            }
        }
        out
    }

    fn areas(&self) -> Vec<(Vec<Vertex>, Area)> {
        let anchors = [
            last_separators(&self.lines[0], &self.bag),
            last_separators(&self.lines[1], &self.bag),
        ];
        let pos = |i: usize, v: Vertex| self.lines[i].iter().position(|&t| t == Token::V(v)).expect("placed");
        self.components()
            .into_iter()
            .map(|comp| {
                let ends = |i: usize| {
                    let ps: Vec<usize> = comp.iter().map(|&v| pos(i, v)).collect();
                    let lo = *ps.iter().min().expect("non-empty");
                    let hi = *ps.iter().max().expect("non-empty");
                    (anchors[i][lo], anchors[i][hi])
                };
                let ((p1, q1), (p2, q2)) = (ends(0), ends(1));
                (comp, Area::new(p1, q1, p2, q2))
            })
            .collect()
    }

    fn projection(&self) -> OrderPair {
        let strip = |line: &Vec<Token>| line.iter().copied().filter(|&t| is_separator(t, &self.bag)).collect();
        OrderPair::from_lines(strip(&self.lines[0]), strip(&self.lines[1])).expect("projection is a pair")
    }
}

impl Realizer for PermutationDp<'_> {
    type Concrete = PermutationConcrete;

    fn concrete_leaf(&self) -> PermutationConcrete {
        let empty = OrderPair::empty();
        PermutationConcrete {
            lines: [empty.line(0).to_vec(), empty.line(1).to_vec()],
            bag: BTreeSet::new(),
        }
    }

    fn introduce_candidates(
        &self,
        c: &PermutationConcrete,
        x: Vertex,
        target: &PermutationAbstraction,
    ) -> Vec<PermutationConcrete> {
        let (f1, f2) = (c.forgotten(0), c.forgotten(1));
        // prefixes of the forgotten sequences holding the same vertices
        let mut closed = vec![true; f1.len() + 1];
        let mut reach = 0;
        for (k, v) in f1.iter().enumerate() {
            reach = reach.max(f2.iter().position(|u| u == v).expect("same vertices") + 1);
            closed[k + 1] = reach == k + 1;
        }
        let before = |i: usize, slot: usize| c.lines[i][..slot].iter().filter(|t| !is_separator(**t, &c.bag)).count();
        let mut bag = c.bag.clone();
        bag.insert(x);
        let mut out = Vec::new();
        for a in 1..c.lines[0].len() {
            let ka = before(0, a);
            if !closed[ka] {
                continue;
            }
            for b in 1..c.lines[1].len() {
                if before(1, b) != ka {
                    continue;
                }
                let mut lines = c.lines.clone();
                lines[0].insert(a, Token::V(x));
                lines[1].insert(b, Token::V(x));
                let cand = PermutationConcrete {
                    lines,
                    bag: bag.clone(),
                };
                if cand.projection() == target.pair {
                    out.push(cand);
                }
            }
        }
        out
    }

    fn concrete_forget(&self, mut c: PermutationConcrete, x: Vertex) -> PermutationConcrete {
        c.bag.remove(&x);
        c
    }

    fn concrete_join(&self, a: &PermutationConcrete, b: &PermutationConcrete) -> Result<PermutationConcrete, String> {
        if a.projection() != b.projection() {
            return Err("sides disagree on the bag orders".into());
        }
        let pair = a.projection();
        let (areas_a, areas_b) = (a.areas(), b.areas());
        let area_of =
            |areas: &[(Vec<Vertex>, Area)], v: Vertex| areas.iter().find(|(c, _)| c.contains(&v)).expect("forgotten").1;
        let left_of = |s: Area, t: Area| pair.le(0, s.q1, t.p1) && pair.le(1, s.q2, t.p2);
        let mut lines: [Vec<Token>; 2] = [Vec::new(), Vec::new()];
        for (i, line) in lines.iter_mut().enumerate() {
            let (la, lb) = (&a.lines[i], &b.lines[i]);
            let (mut ia, mut ib) = (0, 0);
            while ia < la.len() || ib < lb.len() {
                let ha = la.get(ia).copied().filter(|&t| !is_separator(t, &a.bag));
                let hb = lb.get(ib).copied().filter(|&t| !is_separator(t, &b.bag));
                match (ha, hb) {
                    (None, None) => {
                        if la.get(ia) != lb.get(ib) {
                            return Err("sides disagree on the bag orders".into());
                        }
                        line.push(la[ia]);
                        ia += 1;
                        ib += 1;
                    }
                    (Some(t), None) => {
                        line.push(t);
                        ia += 1;
                    }
                    (None, Some(t)) => {
                        line.push(t);
                        ib += 1;
                    }
                    (Some(s), Some(t)) => {
                        let (u, v) = (s.vertex().expect("vertex"), t.vertex().expect("vertex"));
                        if left_of(area_of(&areas_a, u), area_of(&areas_b, v)) {
                            line.push(s);
                            ia += 1;
                        } else {
                            line.push(t);
                            ib += 1;
                        }
                    }
                }
            }
        }
        Ok(PermutationConcrete {
            lines,
            bag: a.bag.clone(),
        })
    }

    fn abstraction(&self, c: &PermutationConcrete, cost: usize) -> PermutationAbstraction {
        let areas = c.areas().into_iter().map(|(_, a)| a).collect();
        PermutationAbstraction::new(c.projection(), areas, cost)
    }

    fn certificate(&self, c: &PermutationConcrete) -> Certificate {
        let pair = OrderPair::from_lines(c.lines[0].clone(), c.lines[1].clone()).expect("valid lines");
        Certificate {
            class: GraphClass::Permutation,
            witness: Witness::Permutation(pair),
        }
    }
}

// Threshold: `W` and the order of right endpoints.

#[derive(Debug, Clone)]
pub struct ThresholdConcrete {
    w: BTreeSet<Vertex>,
    seq: Vec<Token>,
    bag: BTreeSet<Vertex>,
}

impl ThresholdConcrete {
    fn forgotten_at(&self, i: usize) -> Option<Vertex> {
        self.seq[i].vertex().filter(|v| !self.bag.contains(v))
    }
}

impl Realizer for ThresholdDp<'_> {
    type Concrete = ThresholdConcrete;

    fn concrete_leaf(&self) -> ThresholdConcrete {
        ThresholdConcrete {
            w: BTreeSet::new(),
            seq: vec![Token::Bot, Token::Top],
            bag: BTreeSet::new(),
        }
    }

    fn introduce_candidates(
        &self,
        c: &ThresholdConcrete,
        x: Vertex,
        target: &ThresholdAbstraction,
    ) -> Vec<ThresholdConcrete> {
        let mut w = c.w.clone();
        if target.in_w(x) {
            w.insert(x);
        }
        let mut bag = c.bag.clone();
        bag.insert(x);
        let mut out = Vec::new();
        for a in 1..c.seq.len() {
            let clear = (0..c.seq.len()).all(|i| match c.forgotten_at(i) {
                None => true,
                Some(y) => !(if i < a { w.contains(&x) } else { w.contains(&y) }),
            });
            if !clear {
                continue;
            }
            let mut seq = c.seq.clone();
            seq.insert(a, Token::R(x));
            let projected: Vec<Token> = seq.iter().copied().filter(|&t| is_separator(t, &bag)).collect();
            if projected == target.order {
                out.push(ThresholdConcrete {
                    w: w.clone(),
                    seq,
                    bag: bag.clone(),
                });
            }
        }
        out
    }

    fn concrete_forget(&self, mut c: ThresholdConcrete, x: Vertex) -> ThresholdConcrete {
        c.bag.remove(&x);
        c
    }

    fn concrete_join(&self, a: &ThresholdConcrete, b: &ThresholdConcrete) -> Result<ThresholdConcrete, String> {
        let forgot_w =
            |c: &ThresholdConcrete| (0..c.seq.len()).any(|i| c.forgotten_at(i).is_some_and(|v| c.w.contains(&v)));
        let (first, second) = match (forgot_w(a), forgot_w(b)) {
            (true, true) => return Err("both sides forgot a member of W".into()),
            (false, true) => (b, a),
            _ => (a, b),
        };
        let (g1, g2) = (gaps(&first.seq, &first.bag), gaps(&second.seq, &second.bag));
        if g1.len() != g2.len() {
            return Err("sides have different bags".into());
        }
        let mut seq = Vec::new();
        for ((s1, c1), (s2, c2)) in g1.into_iter().zip(g2) {
            if first.seq[s1] != second.seq[s2] {
                return Err("sides disagree on the bag order".into());
            }
            seq.push(first.seq[s1]);
            seq.extend(c1.iter().map(|&i| first.seq[i]));
            seq.extend(c2.iter().map(|&i| second.seq[i]));
        }
        Ok(ThresholdConcrete {
            w: a.w.union(&b.w).copied().collect(),
            seq,
            bag: a.bag.clone(),
        })
    }

    fn abstraction(&self, c: &ThresholdConcrete, cost: usize) -> ThresholdAbstraction {
        let anchor = last_separators(&c.seq, &c.bag);
        let forgotten: Vec<usize> = (0..c.seq.len()).filter(|&i| c.forgotten_at(i).is_some()).collect();
        let last_w = forgotten
            .iter()
            .rev()
            .find(|&&i| c.w.contains(&c.forgotten_at(i).expect("forgotten")));
        let (flag, pivot) = match (last_w, forgotten.first()) {
            (Some(&i), _) => (true, anchor[i]),
            (None, Some(&i)) => (false, anchor[i]),
            (None, None) => (false, anchor[c.seq.len() - 2]),
        };
        ThresholdAbstraction {
            dominating: c.w.intersection(&c.bag).copied().collect(),
            order: c.seq.iter().copied().filter(|&t| is_separator(t, &c.bag)).collect(),
            flag,
            pivot,
            cost,
        }
    }

    fn certificate(&self, c: &ThresholdConcrete) -> Certificate {
        Certificate {
            class: GraphClass::Threshold,
            witness: Witness::Threshold {
                dominating: c.w.iter().copied().collect(),
                order: c.seq.iter().filter_map(|t| t.vertex()).collect(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::{solve_graph, SolveOptions};

    fn toks(s: &str) -> Vec<Token> {
        s.split_whitespace().map(|t| t.parse().unwrap()).collect()
    }

    #[test]
    fn interval_abstraction_of_known_representation() {
        // x, y, z in the bag; u, v, w forgotten.
        let g = Graph::empty(6);
        let dp = IntervalDp {
            graph: &g,
            mode: IntervalMode::Interval,
        };
        let c = IntervalConcrete {
            seq: toks("B l1 l4 r4 l2 r1 l5 r2 l3 l6 r5 r3 r6 T"),
            bag: [0, 1, 2].into_iter().collect(),
        };
        let a = dp.abstraction(&c, 0);
        assert_eq!(a.to_string(), "B l1 l2 r1 r2 l3 r3 T | {(l1,l1) (r1,r3)} | c=0");
    }

    #[test]
    fn permutation_abstraction_of_known_representation() {
        // u1, u2, u3 in the bag; w1..w4 forgotten.
        let g = Graph::empty(7);
        let dp = PermutationDp { graph: &g };
        let c = PermutationConcrete {
            lines: [toks("B 2 5 4 1 6 7 3 T"), toks("B 1 4 6 5 7 3 2 T")],
            bag: [0, 1, 2].into_iter().collect(),
        };
        let a = dp.abstraction(&c, 0);
        assert_eq!(a.pair.to_string(), "B 2 1 3 T / B 1 3 2 T");
        let mut areas: Vec<String> = a.forbidden.iter().map(ToString::to_string).collect();
        areas.sort();
        assert_eq!(areas, vec!["(1,1,1,1)", "(2,1,1,1)"]);
    }

    #[test]
    fn threshold_abstraction_flag_and_pivot() {
        let g = Graph::empty(3);
        let dp = ThresholdDp { graph: &g };
        let mut c = ThresholdConcrete {
            w: [1].into_iter().collect(),
            seq: toks("B r1 r3 r2 T"),
            bag: [0, 1].into_iter().collect(),
        };
        assert_eq!(
            dp.abstraction(&c, 0),
            ThresholdAbstraction::parse("2", "B r1 r2 T", false, "r1", 0).unwrap()
        );
        c.w.insert(2);
        assert_eq!(
            dp.abstraction(&c, 0),
            ThresholdAbstraction::parse("2", "B r1 r2 T", true, "r1", 0).unwrap()
        );
    }

    #[test]
    fn certificates_check_out() {
        let opts = SolveOptions {
            certificate: true,
            ..SolveOptions::default()
        };
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 4)]).unwrap();
        for class in GraphClass::ALL {
            let sol = solve_graph(&g, class, &opts).unwrap();
            let cert = sol.certificate.as_ref().unwrap();
            let deleted = sol.deleted_edges.as_ref().unwrap();
            assert_eq!(deleted.len(), sol.deletions, "{class}");
            assert!(check_certificate(&g, cert, sol.deletions + 1).is_err());
        }
    }
}
