//! Interval-model abstractions and their transitions.
//!
//! One state machine covers interval, proper interval and trivially perfect
//! graphs (linear orders, differing only in which extensions are allowed) and
//! circular-arc graphs (circular orders anchored at an origin token).
//!
//! A forbidden closure `(p, q)` is a maximal connected union of forgotten
//! intervals that starts in the gap right after token `p` and ends in the gap
//! right after token `q`. In circular mode a closure may run past the origin;
//! `wraps` records whether it does, which is what tells a closure lying
//! inside one gap apart from one covering everything except a piece of that
//! gap. `full` marks forgotten arcs covering the whole circle.

use std::fmt;

use crate::graph::{Graph, Vertex};
use crate::order::{
    enumerate_extensions, intersects_circular, intersects_linear, EndpointOrder, ExtensionMode, OrderMode, Token,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IntervalMode {
    Interval,
    Proper,
    Nested,
    Circular,
}

impl IntervalMode {
    pub fn extension_mode(self) -> ExtensionMode {
        match self {
            IntervalMode::Interval => ExtensionMode::General,
            IntervalMode::Proper => ExtensionMode::Proper,
            IntervalMode::Nested => ExtensionMode::Nested,
            IntervalMode::Circular => ExtensionMode::Circular,
        }
    }

    pub fn order_mode(self) -> OrderMode {
        match self {
            IntervalMode::Circular => OrderMode::Circular,
            _ => OrderMode::Linear,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Closure {
    pub start: Token,
    pub end: Token,
    pub wraps: bool,
}

impl Closure {
    pub fn new(start: Token, end: Token) -> Self {
        Closure {
            start,
            end,
            wraps: false,
        }
    }

    pub fn wrapping(start: Token, end: Token) -> Self {
        Closure {
            start,
            end,
            wraps: true,
        }
    }

    fn anchors(self) -> (Token, Token) {
        (self.start, self.end)
    }

    fn map(self, f: impl Fn(Token) -> Token) -> Self {
        Closure {
            start: f(self.start),
            end: f(self.end),
            wraps: self.wraps,
        }
    }
}

impl fmt::Display for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.start, self.end)?;
        if self.wraps {
            write!(f, "~")?;
        }
        Ok(())
    }
}

/// `(π, I, c)` plus the circular-only `full` flag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalAbstraction {
    pub order: EndpointOrder,
    pub forbidden: Vec<Closure>,
    pub full: bool,
    pub cost: usize,
}

impl fmt::Display for IntervalAbstraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {{", self.order)?;
        for (i, c) in self.forbidden.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")?;
        if self.full {
            write!(f, " full")?;
        }
        write!(f, " | c={}", self.cost)
    }
}

impl IntervalAbstraction {
    /// The leaf state: empty order, nothing forbidden, no cost.
    pub fn leaf(mode: IntervalMode) -> Self {
        IntervalAbstraction {
            order: EndpointOrder::empty(mode.order_mode()),
            forbidden: Vec::new(),
            full: false,
            cost: 0,
        }
    }

    /// Builds a state in canonical form.
    pub fn new(order: EndpointOrder, forbidden: Vec<Closure>, cost: usize) -> Self {
        let mut a = IntervalAbstraction {
            order,
            forbidden,
            full: false,
            cost,
        };
        a.normalize();
        a
    }

    pub fn full(order: EndpointOrder, cost: usize) -> Self {
        let mut a = IntervalAbstraction {
            order,
            forbidden: Vec::new(),
            full: true,
            cost,
        };
        a.normalize();
        a
    }

    /// Parses `"B l1 r1 T"` plus closures given as token pairs.
    pub fn parse(mode: IntervalMode, order: &str, forbidden: &[(&str, &str)], cost: usize) -> Result<Self, String> {
        let order = EndpointOrder::parse(mode.order_mode(), order)?;
        let mut closures = Vec::new();
        for &(p, q) in forbidden {
            closures.push(Closure::new(p.parse()?, q.parse()?));
        }
        Ok(IntervalAbstraction::new(order, closures, cost))
    }

    pub fn mode(&self) -> OrderMode {
        self.order.mode()
    }

    /// Sorts closures and drops the ones that can never matter: in linear
    /// mode those before every token or after every token; in circular mode
    /// with an empty bag, where the origin can be moved freely, any number of
    /// closures collapse to one.
    pub fn normalize(&mut self) {
        if self.full {
            self.forbidden.clear();
        }
        match self.order.mode() {
            OrderMode::Linear => {
                let last = self.order.pred(Token::Top);
                self.forbidden
                    .retain(|c| !(c.start == c.end && (c.start == Token::Bot || c.start == last)));
            }
            OrderMode::Circular => {
                if self.order.len() == 1 {
                    if !self.forbidden.is_empty() {
                        self.forbidden = vec![Closure::new(Token::Origin, Token::Origin)];
                    }
                } else {
                    self.rotate_origin();
                }
            }
        }
        self.forbidden.sort();
        self.forbidden.dedup();
    }

    /// Moves the origin of a circular order with a non-empty bag to just
    /// before the left endpoint of the smallest vertex. Nothing lies between
    /// the two afterwards, so no closure is anchored at `O`, and a closure
    /// wraps exactly when it covers that endpoint.
    fn rotate_origin(&mut self) {
        let o = &self.order;
        let tokens = o.tokens();
        let k = tokens.len() - 1;
        let first = o.vertices().into_iter().min().expect("non-empty bag");
        let r = tokens[1..]
            .iter()
            .position(|&t| t == Token::L(first))
            .expect("left endpoint present");
        let m_old = modulus(o);
        let m = 2 * k;
        // old coordinate -> coordinate among the real tokens, rotated
        let moved = |c: usize| {
            let merged = if c <= 1 { m - 1 } else { c - 2 };
            (merged + m - 2 * r) % m
        };
        let real: Vec<Token> = (0..k).map(|j| tokens[1 + (r + j) % k]).collect();
        let forbidden = self
            .forbidden
            .iter()
            .map(|&c| {
                let (start, span) = closure_range(o, c);
                let (ms, me) = (moved(start), moved((start + span) % m_old));
                let covers_token = (0..=span).any(|d| {
                    let x = (start + d) % m_old;
                    x.is_multiple_of(2) && x != 0
                });
                let long = ms == me && covers_token;
                Closure {
                    start: real[(ms - 1) / 2],
                    end: real[(me - 1) / 2],
                    wraps: long || ms > me,
                }
            })
            .collect();
        let mut rotated = vec![Token::Origin];
        rotated.extend(real);
        self.order = EndpointOrder::from_tokens(OrderMode::Circular, rotated).expect("rotation keeps the order valid");
        self.forbidden = forbidden;
    }

    /// The structural invariants every stored state satisfies.
    pub fn check_invariants(&self) -> Result<(), String> {
        self.order.check()?;
        let o = &self.order;
        for c in &self.forbidden {
            if !o.contains(c.start) || !o.contains(c.end) {
                return Err(format!("closure {c} anchored outside {o}"));
            }
        }
        if self.full && !self.forbidden.is_empty() {
            return Err("full state keeps closures".into());
        }
        match o.mode() {
            OrderMode::Linear => {
                let last = o.pred(Token::Top);
                for c in &self.forbidden {
                    if c.wraps {
                        return Err(format!("linear closure {c} wraps"));
                    }
                    if !o.le(c.start, c.end) {
                        return Err(format!("closure {c} ends before it starts"));
                    }
                    if c.end == Token::Top {
                        return Err(format!("closure {c} ends at T"));
                    }
                    if c.start == c.end && (c.start == Token::Bot || c.start == last) {
                        return Err(format!("closure {c} is not canonical"));
                    }
                }
                for (i, a) in self.forbidden.iter().enumerate() {
                    for b in &self.forbidden[i + 1..] {
                        if intersects_linear(a.anchors(), b.anchors(), o) {
                            return Err(format!("closures {a} and {b} intersect"));
                        }
                        if a.start == b.start && a.start != a.end && a.start != b.end && a.end != b.end {
                            return Err(format!("closures {a} and {b} share a left anchor"));
                        }
                        if a.end == b.end && a.end != a.start && a.end != b.start && a.start != b.start {
                            return Err(format!("closures {a} and {b} share a right anchor"));
                        }
                    }
                }
            }
            OrderMode::Circular => {
                for c in &self.forbidden {
                    if c.start != c.end && c.wraps != o.lt(c.end, c.start) {
                        return Err(format!("closure {c} has an inconsistent wrap flag"));
                    }
                }
                for (i, a) in self.forbidden.iter().enumerate() {
                    for b in &self.forbidden[i + 1..] {
                        if closures_meet(o, *a, *b) {
                            return Err(format!("closures {a} and {b} intersect"));
                        }
                    }
                }
                if o.len() == 1 && self.forbidden.len() > 1 {
                    return Err("empty-bag circular state is not canonical".into());
                }
            }
        }
        self.forbidden.windows(2).try_for_each(|w| {
            if w[0] < w[1] {
                Ok(())
            } else {
                Err("closures not sorted".to_string())
            }
        })
    }
}

/// `(p0, q0)`: the gaps of π that `l_x` and `r_x` were inserted into.
fn insertion_gaps(order: &EndpointOrder, x: Vertex) -> (Token, Token) {
    let p0 = order.pred(Token::L(x));
    let q = order.pred(Token::R(x));
    let q0 = if q == Token::L(x) { p0 } else { q };
    (p0, q0)
}

/// Whether two vertices' intervals (or arcs) meet.
pub fn vertices_meet(order: &EndpointOrder, u: Vertex, v: Vertex) -> bool {
    match order.mode() {
        OrderMode::Linear => intersects_linear(order.interval(u), order.interval(v), order),
        OrderMode::Circular => intersects_circular(order.interval(u), order.interval(v), order),
    }
}

/// In an extension π' of a linear order, whether placing `x` respects the
/// graph (non-neighbours in the bag stay disjoint from `x`) and the forbidden
/// closures (`(p0, q0)` parallel to each of them).
pub fn respects(order: &EndpointOrder, x: Vertex, g: &Graph, forbidden: &[Closure]) -> bool {
    respects_edges(order, x, g) && {
        let gaps = insertion_gaps(order, x);
        forbidden.iter().all(|c| !intersects_linear(gaps, c.anchors(), order))
    }
}

fn respects_edges(order: &EndpointOrder, x: Vertex, g: &Graph) -> bool {
    order
        .vertices()
        .into_iter()
        .all(|u| u == x || g.has_edge(x, u) || !vertices_meet(order, x, u))
}

/// All successors of `abs` after introducing `x`.
pub fn introduce(abs: &IntervalAbstraction, x: Vertex, g: &Graph, mode: IntervalMode) -> Vec<IntervalAbstraction> {
    match mode.order_mode() {
        OrderMode::Linear => introduce_linear(abs, x, g, mode),
        OrderMode::Circular => introduce_generic(abs, x, g, mode),
    }
}

fn introduce_linear(abs: &IntervalAbstraction, x: Vertex, g: &Graph, mode: IntervalMode) -> Vec<IntervalAbstraction> {
    let rx = Token::R(x);
    let mut out = Vec::new();
    for ext in enumerate_extensions(&abs.order, x, mode.extension_mode()) {
        if !respects(&ext, x, g, &abs.forbidden) {
            continue;
        }
        let (p0, q0) = insertion_gaps(&ext, x);
        let sub = |t: Token| if t == q0 { rx } else { t };
        let (mut left, mut middle, mut right) = (Vec::new(), Vec::new(), Vec::new());
        for &c in &abs.forbidden {
            if ext.lt(c.start, q0) {
                left.push(c);
            } else if ext.lt(p0, c.end) {
                right.push(c.map(sub));
            } else {
                debug_assert!(c.start == p0 && c.end == p0 && p0 == q0);
                middle.push(c);
            }
        }
        let mut first = left.clone();
        first.extend(&right);
        if !middle.is_empty() {
            let mut second = first.clone();
            second.push(Closure::new(rx, rx));
            out.push(IntervalAbstraction::new(ext.clone(), second, abs.cost));
            first.extend(&middle);
        }
        out.push(IntervalAbstraction::new(ext, first, abs.cost));
    }
    out
}

/// Bag edges at `x` left unrealized by the order.
pub fn unrealized_edges(order: &EndpointOrder, x: Vertex, g: &Graph) -> usize {
    order
        .vertices()
        .into_iter()
        .filter(|&u| u != x && g.has_edge(x, u) && !vertices_meet(order, x, u))
        .count()
}

/// The successor of `abs` after forgetting `x`.
pub fn forget(abs: &IntervalAbstraction, x: Vertex, g: &Graph, mode: IntervalMode) -> IntervalAbstraction {
    match mode.order_mode() {
        OrderMode::Linear => forget_linear(abs, x, g),
        OrderMode::Circular => forget_generic(abs, x, g),
    }
}

fn forget_linear(abs: &IntervalAbstraction, x: Vertex, g: &Graph) -> IntervalAbstraction {
    let o = &abs.order;
    let (lx, rx) = (Token::L(x), Token::R(x));
    let cost = abs.cost + unrealized_edges(o, x, g);
    let (p0, q0) = insertion_gaps(o, x);
    let (mut p_star, mut q_star) = (p0, rx);
    let mut kept = Vec::new();
    for &c in &abs.forbidden {
        if intersects_linear((p0, rx), c.anchors(), o) {
            p_star = o.min(p_star, c.start);
            q_star = o.max(q_star, c.end);
        } else {
            kept.push(c);
        }
    }
    kept.push(Closure::new(p_star, q_star));
    let sub = |t: Token| if t == rx { q0 } else { t };
    let forbidden = kept.into_iter().map(|c| c.map(sub)).collect::<Vec<_>>();
    debug_assert!(forbidden.iter().all(|c| c.start != lx && c.end != lx));
    IntervalAbstraction::new(o.without_vertex(x), forbidden, cost)
}

/// `None` if the states differ in order or have intersecting closures.
pub fn join(a: &IntervalAbstraction, b: &IntervalAbstraction) -> Option<IntervalAbstraction> {
    if a.order != b.order {
        return None;
    }
    let o = &a.order;
    let cost = a.cost + b.cost;
    match o.mode() {
        OrderMode::Linear => {
            let clash = a.forbidden.iter().any(|c| {
                b.forbidden
                    .iter()
                    .any(|d| intersects_linear(c.anchors(), d.anchors(), o))
            });
            if clash {
                return None;
            }
        }
        OrderMode::Circular => {
            if (a.full && !b.forbidden.is_empty()) || (b.full && !a.forbidden.is_empty()) || (a.full && b.full) {
                return None;
            }
            if a.full || b.full {
                return Some(IntervalAbstraction::full(o.clone(), cost));
            }
            let clash = a
                .forbidden
                .iter()
                .any(|&c| b.forbidden.iter().any(|&d| closures_meet(o, c, d)));
            if clash {
                return None;
            }
        }
    }
    let mut forbidden = a.forbidden.clone();
    forbidden.extend(&b.forbidden);
    Some(IntervalAbstraction::new(o.clone(), forbidden, cost))
}

/// `a` is at least as good as `b`: same order, every closure of `a` inside
/// one of `b`, and no larger cost.
pub fn dominates(a: &IntervalAbstraction, b: &IntervalAbstraction) -> bool {
    if a.order != b.order || a.cost > b.cost {
        return false;
    }
    let o = &a.order;
    match o.mode() {
        OrderMode::Linear => a
            .forbidden
            .iter()
            .all(|c| b.forbidden.iter().any(|d| o.le(d.start, c.start) && o.le(c.end, d.end))),
        OrderMode::Circular => {
            if b.full {
                return true;
            }
            !a.full
                && a.forbidden
                    .iter()
                    .all(|&c| b.forbidden.iter().any(|&d| closure_within(o, c, d)))
        }
    }
}

/// Even coordinates, which are tokens.
const TOKEN_BITS: u128 = 0x5555_5555_5555_5555_5555_5555_5555_5555;

/// Coordinates covered by some closure, as a bit set. Dominance implies
/// inclusion of these sets.
pub fn coverage_mask(abs: &IntervalAbstraction) -> u128 {
    let o = &abs.order;
    let m = modulus(o);
    if m > 128 {
        return u128::MAX;
    }
    let span_bits = |lo: usize, hi: usize| (u128::MAX >> (127 - hi)) & (u128::MAX << lo);
    if abs.full {
        return span_bits(0, m - 1);
    }
    let mut mask = 0;
    for &c in &abs.forbidden {
        let (s, span) = match o.mode() {
            OrderMode::Linear => (2 * o.pos(c.start) + 1, 2 * (o.pos(c.end) - o.pos(c.start))),
            OrderMode::Circular => closure_range(o, c),
        };
        if s + span < m {
            mask |= span_bits(s, s + span);
        } else if span >= m - 1 {
            mask |= span_bits(0, m - 1);
        } else {
            mask |= span_bits(s, m - 1) | span_bits(0, s + span - m);
        }
    }
    mask
}

/// Keeps one representative of every maximal element under dominance.
///
/// Deterministic: the survivors come out sorted.
pub fn reduce(entries: Vec<IntervalAbstraction>) -> Vec<IntervalAbstraction> {
    crate::dp::reduce_by(entries, |a| a.order.clone(), |a| a.cost, dominates)
}

// Circular geometry. Token `i` of an order with `n` tokens sits at
// coordinate `2i`, the gap after it at `2i + 1`, and coordinates are taken
// modulo `2n`. Ranges are `(start, span)`, covering `start..=start + span`.

type Range = (usize, usize);

fn modulus(order: &EndpointOrder) -> usize {
    2 * order.len()
}

fn closure_range(order: &EndpointOrder, c: Closure) -> Range {
    let m = modulus(order);
    let s = 2 * order.pos(c.start) + 1;
    let e = 2 * order.pos(c.end) + 1;
    let span = (e + m - s) % m;
    (s, if span == 0 && c.wraps { m } else { span })
}

fn arc_range(order: &EndpointOrder, v: Vertex) -> Range {
    let m = modulus(order);
    let s = 2 * order.pos(Token::L(v));
    let e = 2 * order.pos(Token::R(v));
    (s, (e + m - s) % m)
}

fn in_range(r: Range, c: usize, m: usize) -> bool {
    (c + m - r.0) % m <= r.1
}

fn is_range_end(r: Range, c: usize, m: usize) -> bool {
    c == r.0 || c == (r.0 + r.1) % m
}

fn ranges_overlap(a: Range, b: Range, m: usize) -> bool {
    (0..m).any(|c| in_range(a, c, m) && in_range(b, c, m))
}

fn closure_meets_vertex(order: &EndpointOrder, c: Closure, v: Vertex) -> bool {
    ranges_overlap(closure_range(order, c), arc_range(order, v), modulus(order))
}

/// Two closures meet if they share a token, or a gap that is not merely
/// where both of them end (in which case they can be laid side by side).
fn closures_meet(order: &EndpointOrder, a: Closure, b: Closure) -> bool {
    let m = modulus(order);
    let (ra, rb) = (closure_range(order, a), closure_range(order, b));
    (0..m).any(|c| {
        in_range(ra, c, m) && in_range(rb, c, m) && (c % 2 == 0 || !(is_range_end(ra, c, m) && is_range_end(rb, c, m)))
    })
}

fn closure_within(order: &EndpointOrder, inner: Closure, outer: Closure) -> bool {
    let m = modulus(order);
    let (ri, ro) = (closure_range(order, inner), closure_range(order, outer));
    if ro.1 == m {
        // Everything but part of the gap at `ro.0`.
        return if ri.1 == m {
            ri.0 == ro.0
        } else {
            !in_range(ri, ro.0, m) || is_range_end(ri, ro.0, m)
        };
    }
    (0..m).all(|c| !in_range(ri, c, m) || in_range(ro, c, m))
}

/// The tokens of `x` directly following `t`, in order.
fn new_tokens_after(order: &EndpointOrder, t: Token, x: Vertex) -> Vec<Token> {
    let mut out = Vec::new();
    let mut u = order.succ(t);
    while u.vertex() == Some(x) {
        out.push(u);
        u = order.succ(u);
    }
    out
}

/// Introduce by refining every closure over the split gaps.
///
/// Each closure may start or end in any piece of the gap it occupied; the
/// pieces that keep it clear of `x` are tried in every combination that
/// keeps the closures pairwise clear. This is the only route for circular
/// mode and an independent cross-check of the linear transitions.
pub fn introduce_generic(
    abs: &IntervalAbstraction,
    x: Vertex,
    g: &Graph,
    mode: IntervalMode,
) -> Vec<IntervalAbstraction> {
    let mut out = Vec::new();
    if abs.full {
        return out;
    }
    for ext in enumerate_extensions(&abs.order, x, mode.extension_mode()) {
        if !respects_edges(&ext, x, g) {
            continue;
        }
        let mut choices: Vec<Vec<Closure>> = Vec::with_capacity(abs.forbidden.len());
        for &c in &abs.forbidden {
            let mut starts = vec![c.start];
            starts.extend(new_tokens_after(&ext, c.start, x));
            let mut ends = vec![c.end];
            ends.extend(new_tokens_after(&ext, c.end, x));
            let mut options = Vec::new();
            for (i, &s) in starts.iter().enumerate() {
                for (j, &e) in ends.iter().enumerate() {
                    if c.start == c.end && (if c.wraps { i < j } else { i > j }) {
                        continue;
                    }
                    let refined = Closure {
                        start: s,
                        end: e,
                        wraps: c.wraps,
                    };
                    if !closure_meets_vertex(&ext, refined, x) {
                        options.push(refined);
                    }
                }
            }
            choices.push(options);
        }
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        let mut pick = vec![0usize; choices.len()];
        loop {
            let chosen: Vec<Closure> = pick.iter().zip(&choices).map(|(&i, opts)| opts[i]).collect();
            let clear = chosen
                .iter()
                .enumerate()
                .all(|(i, &a)| chosen[i + 1..].iter().all(|&b| !closures_meet(&ext, a, b)));
            if clear {
                out.push(IntervalAbstraction::new(ext.clone(), chosen, abs.cost));
            }
            let mut k = 0;
            while k < pick.len() {
                pick[k] += 1;
                if pick[k] < choices[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
            if k == pick.len() {
                break;
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Forget by merging `x` with every closure it meets, in coordinates
/// unrolled from `l_x`. Handles both order modes.
pub fn forget_generic(abs: &IntervalAbstraction, x: Vertex, g: &Graph) -> IntervalAbstraction {
    let o = &abs.order;
    let cost = abs.cost + unrealized_edges(o, x, g);
    let reduced = o.without_vertex(x);
    if abs.full {
        return IntervalAbstraction::full(reduced, cost);
    }
    let m = modulus(o) as i64;
    let (base, len_x) = {
        let (s, span) = arc_range(o, x);
        (s as i64, span as i64)
    };
    let (mut lo, mut hi) = (0i64, len_x);
    let mut kept = Vec::new();
    for &c in &abs.forbidden {
        if !closure_meets_vertex(o, c, x) {
            kept.push(c);
            continue;
        }
        let (s, span) = closure_range(o, c);
        let rel = (s as i64 - base).rem_euclid(m);
        let (a, b) = if rel <= len_x {
            (rel, rel + span as i64)
        } else {
            (rel - m, rel - m + span as i64)
        };
        lo = lo.min(a);
        hi = hi.max(b);
    }
    if hi - lo > m {
        return IntervalAbstraction::full(reduced, cost);
    }
    // gap of π without x that holds coordinate `c` of π
    let anchor = |c: i64| -> Token {
        let c = (c + base).rem_euclid(m) as usize;
        let mut t = o.token(c / 2);
        if c.is_multiple_of(2) {
            t = o.pred(t);
        }
        while t.vertex() == Some(x) {
            t = o.pred(t);
        }
        t
    };
    let wraps = match o.mode() {
        OrderMode::Linear => false,
        OrderMode::Circular => {
            let origin = m - base;
            (-1..=1).any(|k| (lo..=hi).contains(&(origin + k * m)))
        }
    };
    let merged = Closure {
        start: anchor(lo),
        end: anchor(hi),
        wraps,
    };
    let lift = |t: Token| {
        let mut t = t;
        while t.vertex() == Some(x) {
            t = o.pred(t);
        }
        t
    };
    let mut forbidden: Vec<Closure> = kept.into_iter().map(|c| c.map(lift)).collect();
    forbidden.push(merged);
    IntervalAbstraction::new(reduced, forbidden, cost)
}

/// The interval-family solver plugged into the generic driver.
pub struct IntervalDp<'g> {
    pub graph: &'g Graph,
    pub mode: IntervalMode,
}

impl crate::dp::ClassDp for IntervalDp<'_> {
    type State = IntervalAbstraction;
    type Key = EndpointOrder;

    fn leaf(&self) -> IntervalAbstraction {
        IntervalAbstraction::leaf(self.mode)
    }

    fn introduce(&self, s: &IntervalAbstraction, x: Vertex) -> Vec<IntervalAbstraction> {
        introduce(s, x, self.graph, self.mode)
    }

    fn forget(&self, s: &IntervalAbstraction, x: Vertex) -> Vec<IntervalAbstraction> {
        vec![forget(s, x, self.graph, self.mode)]
    }

    fn join(&self, a: &IntervalAbstraction, b: &IntervalAbstraction) -> Option<IntervalAbstraction> {
        join(a, b)
    }

    fn key(&self, s: &IntervalAbstraction) -> EndpointOrder {
        s.order.clone()
    }

    fn cost(&self, s: &IntervalAbstraction) -> usize {
        s.cost
    }

    fn lower_bound(&self, s: &IntervalAbstraction) -> usize {
        let vs = s.order.vertices();
        let lost = vs
            .iter()
            .enumerate()
            .flat_map(|(i, &u)| vs[i + 1..].iter().map(move |&v| (u, v)))
            .filter(|&(u, v)| self.graph.has_edge(u, v) && !vertices_meet(&s.order, u, v))
            .count();
        s.cost + lost
    }

    fn dominates(&self, a: &IntervalAbstraction, b: &IntervalAbstraction) -> bool {
        dominates(a, b)
    }

    fn dominance_mask(&self, s: &IntervalAbstraction) -> u128 {
        coverage_mask(s)
    }

    fn clash_mask(&self, s: &IntervalAbstraction) -> u128 {
        if modulus(&s.order) > 128 {
            0
        } else {
            coverage_mask(s) & TOKEN_BITS
        }
    }

    fn check(&self, s: &IntervalAbstraction) -> Result<(), String> {
        s.check_invariants()
    }
}
