//! Endpoint tokens, linear and circular orders, and the intersection
//! predicates every class solver is built from.

use std::fmt;
use std::str::FromStr;

use crate::graph::Vertex;

/// A point in an order.
///
/// `L`/`R` are interval (or arc) endpoints, `V` is a vertex point of a
/// permutation line. `Bot`/`Top` bound linear orders; `Origin` is the fixed
/// cut point of circular orders and never an endpoint of an arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    Bot,
    Origin,
    L(Vertex),
    R(Vertex),
    V(Vertex),
    Top,
}

impl Token {
    pub fn vertex(self) -> Option<Vertex> {
        match self {
            Token::L(v) | Token::R(v) | Token::V(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Token::Bot => write!(f, "B"),
            Token::Top => write!(f, "T"),
            Token::Origin => write!(f, "O"),
            Token::L(v) => write!(f, "l{}", v + 1),
            Token::R(v) => write!(f, "r{}", v + 1),
            Token::V(v) => write!(f, "{}", v + 1),
        }
    }
}

impl FromStr for Token {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let vertex = |rest: &str| -> Result<Vertex, String> {
            match rest.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(format!("bad token {s:?}")),
            }
        };
        match s {
            "B" => Ok(Token::Bot),
            "T" => Ok(Token::Top),
            "O" => Ok(Token::Origin),
            _ if s.starts_with('l') => Ok(Token::L(vertex(&s[1..])?)),
            _ if s.starts_with('r') => Ok(Token::R(vertex(&s[1..])?)),
            _ => Ok(Token::V(vertex(s)?)),
        }
    }
}

fn parse_tokens(s: &str) -> Result<Vec<Token>, String> {
    s.split_whitespace().map(str::parse).collect()
}

fn write_tokens(f: &mut fmt::Formatter<'_>, tokens: &[Token]) -> fmt::Result {
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderMode {
    /// `Bot ... Top`, every `l_v` before its `r_v`.
    Linear,
    /// `Origin ...`, read cyclically; arcs may wrap past the origin.
    Circular,
}

/// Which structural restriction an extension must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtensionMode {
    General,
    /// No interval strictly contains another.
    Proper,
    /// No two intervals overlap without one containing the other.
    Nested,
    Circular,
}

const KIND_SHIFT: u32 = 29;
const VERTEX_MASK: u32 = (1 << KIND_SHIFT) - 1;

/// Packs a token into 32 bits, preserving the token order.
fn pack(t: Token) -> u32 {
    let (kind, v) = match t {
        Token::Bot => (0, 0),
        Token::Origin => (1, 0),
        Token::L(v) => (2, v),
        Token::R(v) => (3, v),
        Token::V(v) => (4, v),
        Token::Top => (5, 0),
    };
    let v = u32::try_from(v)
        .ok()
        .filter(|&v| v <= VERTEX_MASK)
        .expect("vertex index too large for an order");
    (kind << KIND_SHIFT) | v
}

fn unpack(p: u32) -> Token {
    let v = (p & VERTEX_MASK) as Vertex;
    match p >> KIND_SHIFT {
        0 => Token::Bot,
        1 => Token::Origin,
        2 => Token::L(v),
        3 => Token::R(v),
        4 => Token::V(v),
        _ => Token::Top,
    }
}

/// An order over endpoint tokens.
///
/// Bags are small, so positions are found by a scan over at most a few
/// dozen tokens.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EndpointOrder {
    mode: OrderMode,
    tokens: Box<[u32]>,
}

impl EndpointOrder {
    /// `[Bot, Top]`.
    pub fn linear_empty() -> Self {
        EndpointOrder {
            mode: OrderMode::Linear,
            tokens: Box::new([pack(Token::Bot), pack(Token::Top)]),
        }
    }

    /// `[Origin]`.
    pub fn circular_empty() -> Self {
        EndpointOrder {
            mode: OrderMode::Circular,
            tokens: Box::new([pack(Token::Origin)]),
        }
    }

    pub fn empty(mode: OrderMode) -> Self {
        match mode {
            OrderMode::Linear => Self::linear_empty(),
            OrderMode::Circular => Self::circular_empty(),
        }
    }

    /// Builds an order, checking the mode's invariants.
    pub fn from_tokens(mode: OrderMode, tokens: Vec<Token>) -> Result<Self, String> {
        let order = EndpointOrder {
            mode,
            tokens: tokens.into_iter().map(pack).collect(),
        };
        order.check()?;
        Ok(order)
    }

    pub fn parse(mode: OrderMode, s: &str) -> Result<Self, String> {
        Self::from_tokens(mode, parse_tokens(s)?)
    }

    pub fn check(&self) -> Result<(), String> {
        let t = self.tokens();
        let mut sorted = t.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(format!("repeated token in {self}"));
        }
        match self.mode {
            OrderMode::Linear => {
                if t.first() != Some(&Token::Bot) || t.last() != Some(&Token::Top) {
                    return Err(format!("linear order {self} must run from B to T"));
                }
                if t.iter().any(|x| matches!(x, Token::Origin | Token::V(_))) {
                    return Err(format!("linear order {self} holds a foreign token"));
                }
            }
            OrderMode::Circular => {
                if t.first() != Some(&Token::Origin) {
                    return Err(format!("circular order {self} must start at O"));
                }
                if t.iter().any(|x| matches!(x, Token::Bot | Token::Top | Token::V(_))) {
                    return Err(format!("circular order {self} holds a foreign token"));
                }
            }
        }
        for (i, &tok) in t.iter().enumerate() {
            if let Token::L(v) = tok {
                match t.iter().position(|&u| u == Token::R(v)) {
                    None => return Err(format!("l{} without r{} in {self}", v + 1, v + 1)),
                    Some(j) if self.mode == OrderMode::Linear && j < i => {
                        return Err(format!("r{} precedes l{} in {self}", v + 1, v + 1))
                    }
                    _ => {}
                }
            }
            if let Token::R(v) = tok {
                if !t.contains(&Token::L(v)) {
                    return Err(format!("r{} without l{} in {self}", v + 1, v + 1));
                }
            }
        }
        Ok(())
    }

    pub fn mode(&self) -> OrderMode {
        self.mode
    }

    pub fn tokens(&self) -> Vec<Token> {
        self.tokens.iter().map(|&p| unpack(p)).collect()
    }

    /// The token at position `i`.
    pub fn token(&self, i: usize) -> Token {
        unpack(self.tokens[i])
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Vertices with endpoints in this order, in order of their left endpoint.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.tokens
            .iter()
            .filter_map(|&p| match unpack(p) {
                Token::L(v) => Some(v),
                _ => None,
            })
            .collect()
    }

    pub fn contains(&self, t: Token) -> bool {
        self.tokens.contains(&pack(t))
    }

    /// Position of `t`; panics if absent.
    pub fn pos(&self, t: Token) -> usize {
        let p = pack(t);
        self.tokens
            .iter()
            .position(|&u| u == p)
            .unwrap_or_else(|| panic!("token {t} not in order {self}"))
    }

    pub fn lt(&self, a: Token, b: Token) -> bool {
        self.pos(a) < self.pos(b)
    }

    pub fn le(&self, a: Token, b: Token) -> bool {
        self.pos(a) <= self.pos(b)
    }

    /// The earlier of two tokens.
    pub fn min(&self, a: Token, b: Token) -> Token {
        if self.le(a, b) {
            a
        } else {
            b
        }
    }

    pub fn max(&self, a: Token, b: Token) -> Token {
        if self.le(a, b) {
            b
        } else {
            a
        }
    }

    /// Next token. Wraps in circular mode; panics on `Top` in linear mode.
    pub fn succ(&self, t: Token) -> Token {
        let i = self.pos(t);
        match self.mode {
            OrderMode::Linear => {
                assert!(i + 1 < self.tokens.len(), "succ of the last token is undefined");
                self.token(i + 1)
            }
            OrderMode::Circular => self.token((i + 1) % self.tokens.len()),
        }
    }

    /// Previous token. Wraps in circular mode; panics on `Bot` in linear mode.
    pub fn pred(&self, t: Token) -> Token {
        let i = self.pos(t);
        match self.mode {
            OrderMode::Linear => {
                assert!(i > 0, "pred of the first token is undefined");
                self.token(i - 1)
            }
            OrderMode::Circular => self.token((i + self.tokens.len() - 1) % self.tokens.len()),
        }
    }

    /// Removes every token of `v`.
    pub fn without_vertex(&self, v: Vertex) -> Self {
        EndpointOrder {
            mode: self.mode,
            tokens: self
                .tokens
                .iter()
                .copied()
                .filter(|&p| unpack(p).vertex() != Some(v))
                .collect(),
        }
    }

    /// Inserts `l_x` at index `li` and `r_x` at index `ri` of the result.
    pub fn with_inserted(&self, x: Vertex, li: usize, ri: usize) -> Self {
        assert_ne!(li, ri);
        let mut tokens = Vec::with_capacity(self.tokens.len() + 2);
        tokens.extend_from_slice(&self.tokens);
        if li < ri {
            tokens.insert(li, pack(Token::L(x)));
            tokens.insert(ri, pack(Token::R(x)));
        } else {
            tokens.insert(ri, pack(Token::R(x)));
            tokens.insert(li, pack(Token::L(x)));
        }
        EndpointOrder {
            mode: self.mode,
            tokens: tokens.into_boxed_slice(),
        }
    }

    /// `(l_v, r_v)`.
    pub fn interval(&self, v: Vertex) -> (Token, Token) {
        (Token::L(v), Token::R(v))
    }
}

impl fmt::Display for EndpointOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, &self.tokens())
    }
}

/// `p1 < q2` and `p2 < q1`.
pub fn intersects_linear(a: (Token, Token), b: (Token, Token), order: &EndpointOrder) -> bool {
    order.lt(a.0, b.1) && order.lt(b.0, a.1)
}

/// Whether an endpoint of `b` lies strictly inside the arc `a`, reading the
/// order from the origin: either `p1 < m < q1`, or the arc wraps
/// (`q1 < p1`) and `p1 < m` or `m < q1`.
pub fn arc_holds_endpoint(a: (Token, Token), b: (Token, Token), order: &EndpointOrder) -> bool {
    let (p, q) = (order.pos(a.0), order.pos(a.1));
    [b.0, b.1].iter().any(|&m| {
        let m = order.pos(m);
        (p < m && m < q) || (q < p && p < m) || (m < q && q < p)
    })
}

/// Two arcs meet iff one holds an endpoint of the other.
pub fn intersects_circular(a: (Token, Token), b: (Token, Token), order: &EndpointOrder) -> bool {
    arc_holds_endpoint(a, b, order) || arc_holds_endpoint(b, a, order)
}

/// Inserts `l_x`, `r_x` in every admissible way, in lexicographic order of
/// their positions. The mode's restriction is checked against every vertex
/// already present.
pub fn enumerate_extensions(order: &EndpointOrder, x: Vertex, mode: ExtensionMode) -> Vec<EndpointOrder> {
    assert!(!order.contains(Token::L(x)), "vertex {x} already in order");
    let n = order.len();
    let mut out = Vec::new();
    match order.mode() {
        OrderMode::Linear => {
            assert!(mode != ExtensionMode::Circular, "circular extension of a linear order");
            // Result has n + 2 tokens; Bot stays at 0, Top at n + 1.
            for li in 1..=n - 1 {
                for ri in li + 1..=n {
                    let ext = order.with_inserted(x, li, ri);
                    if satisfies_restriction(&ext, x, mode) {
                        out.push(ext);
                    }
                }
            }
        }
        OrderMode::Circular => {
            assert!(mode == ExtensionMode::Circular, "linear extension of a circular order");
            for li in 1..=n + 1 {
                for ri in 1..=n + 1 {
                    if li != ri {
                        out.push(order.with_inserted(x, li, ri));
                    }
                }
            }
        }
    }
    out
}

fn satisfies_restriction(order: &EndpointOrder, x: Vertex, mode: ExtensionMode) -> bool {
    let (lx, rx) = (order.pos(Token::L(x)), order.pos(Token::R(x)));
    order.vertices().into_iter().filter(|&u| u != x).all(|u| {
        let (lu, ru) = (order.pos(Token::L(u)), order.pos(Token::R(u)));
        match mode {
            ExtensionMode::General | ExtensionMode::Circular => true,
            ExtensionMode::Proper => !((lu < lx && rx < ru) || (lx < lu && ru < rx)),
            ExtensionMode::Nested => !((lu < lx && lx < ru && ru < rx) || (lx < lu && lu < rx && rx < ru)),
        }
    })
}

/// Two linear orders over vertex points, each bounded by `Bot` and `Top`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderPair {
    lines: [Vec<Token>; 2],
}

impl OrderPair {
    pub fn empty() -> Self {
        OrderPair {
            lines: [vec![Token::Bot, Token::Top], vec![Token::Bot, Token::Top]],
        }
    }

    pub fn from_lines(first: Vec<Token>, second: Vec<Token>) -> Result<Self, String> {
        let pair = OrderPair { lines: [first, second] };
        pair.check()?;
        Ok(pair)
    }

    /// Parses `"B 2 1 T / B 1 2 T"`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once('/').ok_or("expected two lines separated by '/'")?;
        Self::from_lines(parse_tokens(a)?, parse_tokens(b)?)
    }

    pub fn check(&self) -> Result<(), String> {
        for line in &self.lines {
            if line.first() != Some(&Token::Bot) || line.last() != Some(&Token::Top) {
                return Err(format!("line of {self} must run from B to T"));
            }
            if line[1..line.len() - 1].iter().any(|t| !matches!(t, Token::V(_))) {
                return Err(format!("{self} holds a non-vertex token"));
            }
        }
        let mut a = self.lines[0].clone();
        let mut b = self.lines[1].clone();
        a.sort();
        b.sort();
        if a != b || a.windows(2).any(|w| w[0] == w[1]) {
            return Err(format!("lines of {self} differ or repeat tokens"));
        }
        Ok(())
    }

    pub fn line(&self, i: usize) -> &[Token] {
        &self.lines[i]
    }

    pub fn pos(&self, i: usize, t: Token) -> usize {
        self.lines[i]
            .iter()
            .position(|&u| u == t)
            .unwrap_or_else(|| panic!("token {t} not in line {i} of {self}"))
    }

    pub fn lt(&self, i: usize, a: Token, b: Token) -> bool {
        self.pos(i, a) < self.pos(i, b)
    }

    pub fn le(&self, i: usize, a: Token, b: Token) -> bool {
        self.pos(i, a) <= self.pos(i, b)
    }

    pub fn succ(&self, i: usize, t: Token) -> Token {
        self.lines[i][self.pos(i, t) + 1]
    }

    pub fn pred(&self, i: usize, t: Token) -> Token {
        self.lines[i][self.pos(i, t) - 1]
    }

    pub fn min(&self, i: usize, a: Token, b: Token) -> Token {
        if self.le(i, a, b) {
            a
        } else {
            b
        }
    }

    pub fn max(&self, i: usize, a: Token, b: Token) -> Token {
        if self.le(i, a, b) {
            b
        } else {
            a
        }
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.lines[0].iter().filter_map(|t| t.vertex()).collect()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.lines[0].contains(&Token::V(v))
    }

    pub fn without_vertex(&self, v: Vertex) -> Self {
        let strip = |line: &Vec<Token>| line.iter().copied().filter(|&t| t != Token::V(v)).collect();
        OrderPair {
            lines: [strip(&self.lines[0]), strip(&self.lines[1])],
        }
    }

    /// Inserts `x` at index `a` of the first line and `b` of the second.
    pub fn with_inserted(&self, x: Vertex, a: usize, b: usize) -> Self {
        let mut lines = self.lines.clone();
        lines[0].insert(a, Token::V(x));
        lines[1].insert(b, Token::V(x));
        OrderPair { lines }
    }
}

impl fmt::Display for OrderPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, &self.lines[0])?;
        write!(f, " / ")?;
        write_tokens(f, &self.lines[1])
    }
}

/// The two lines disagree on the relative order of `u` and `v`.
pub fn crosses_permutation(u: Vertex, v: Vertex, pair: &OrderPair) -> bool {
    let (a, b) = (Token::V(u), Token::V(v));
    pair.lt(0, a, b) != pair.lt(1, a, b)
}

/// Every way of inserting `x` into both lines, lexicographic by position.
pub fn enumerate_pair_extensions(pair: &OrderPair, x: Vertex) -> Vec<OrderPair> {
    assert!(!pair.contains(x), "vertex {x} already in pair");
    let gaps0 = pair.line(0).len() - 1;
    let gaps1 = pair.line(1).len() - 1;
    let mut out = Vec::with_capacity(gaps0 * gaps1);
    for a in 1..=gaps0 {
        for b in 1..=gaps1 {
            out.push(pair.with_inserted(x, a, b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lin(s: &str) -> EndpointOrder {
        EndpointOrder::parse(OrderMode::Linear, s).unwrap()
    }

    fn circ(s: &str) -> EndpointOrder {
        EndpointOrder::parse(OrderMode::Circular, s).unwrap()
    }

    #[test]
    fn succ_pred_linear_and_wrapping() {
        let o = lin("B l1 r1 T");
        assert_eq!(o.succ(Token::L(0)), Token::R(0));
        assert_eq!(o.pred(Token::Top), Token::R(0));
        let c = circ("O l1 r1");
        assert_eq!(c.succ(Token::R(0)), Token::Origin);
        assert_eq!(c.pred(Token::Origin), Token::R(0));
    }

    #[test]
    #[should_panic]
    fn succ_of_top_is_a_contract_violation() {
        lin("B T").succ(Token::Top);
    }

    #[test]
    fn order_invariants() {
        assert!(EndpointOrder::parse(OrderMode::Linear, "B r1 l1 T").is_err());
        assert!(EndpointOrder::parse(OrderMode::Linear, "l1 r1 T").is_err());
        assert!(EndpointOrder::parse(OrderMode::Circular, "O r1 l1").is_ok());
        assert!(EndpointOrder::parse(OrderMode::Circular, "B l1 r1").is_err());
        assert!(EndpointOrder::parse(OrderMode::Linear, "B l1 r1 l1 T").is_err());
    }

    #[test]
    fn overlapping_and_disjoint_intervals() {
        // x=1, y=2 overlap; u=3 ends before z=4 starts.
        let o = lin("B l1 l2 r1 r2 l3 r3 l4 r4 T");
        assert!(intersects_linear(o.interval(0), o.interval(1), &o));
        assert!(!intersects_linear(o.interval(2), o.interval(3), &o));
    }

    #[test]
    fn wrapping_arc_meets_arc_in_its_span() {
        // arc 1 wraps past the origin: r1 < l1.
        let o = circ("O r1 l2 r2 l1");
        assert!(!intersects_circular(o.interval(0), o.interval(1), &o));
        let o = circ("O l2 r1 r2 l1");
        assert!(intersects_circular(o.interval(0), o.interval(1), &o));
        let o = circ("O l1 r1 l2 r2");
        assert!(!intersects_circular(o.interval(0), o.interval(1), &o));
    }

    #[test]
    fn extension_counts() {
        assert_eq!(enumerate_extensions(&lin("B T"), 1, ExtensionMode::General).len(), 1);
        let base = lin("B l1 r1 T");
        assert_eq!(enumerate_extensions(&base, 1, ExtensionMode::General).len(), 6);
        let proper = enumerate_extensions(&base, 1, ExtensionMode::Proper);
        assert_eq!(proper.len(), 4);
        assert!(!proper.contains(&lin("B l1 l2 r2 r1 T")));
        assert!(!proper.contains(&lin("B l2 l1 r1 r2 T")));
        let nested = enumerate_extensions(&base, 1, ExtensionMode::Nested);
        assert_eq!(nested.len(), 4);
        assert!(!nested.contains(&lin("B l1 l2 r1 r2 T")));
        // circular: 2 new tokens into 2 slots after O, either order.
        assert_eq!(enumerate_extensions(&circ("O"), 0, ExtensionMode::Circular).len(), 2);
        assert_eq!(
            enumerate_extensions(&circ("O l1 r1"), 1, ExtensionMode::Circular).len(),
            12
        );
    }

    #[test]
    fn extensions_are_lexicographic_and_distinct() {
        let exts = enumerate_extensions(&lin("B l1 r1 l2 r2 T"), 2, ExtensionMode::General);
        let keys: Vec<(usize, usize)> = exts.iter().map(|o| (o.pos(Token::L(2)), o.pos(Token::R(2)))).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn permutation_crossings() {
        // Top line: u2 w2 w1 u1 ...; bottom: u1 w1 w3 w2 ...
        // With u1=1, u2=2: u2 first on top, u1 first on bottom.
        let p = OrderPair::parse("B 2 1 T / B 1 2 T").unwrap();
        assert!(crosses_permutation(0, 1, &p));
        let q = OrderPair::parse("B 1 2 T / B 1 2 T").unwrap();
        assert!(!crosses_permutation(0, 1, &q));
    }

    #[test]
    fn pair_extension_counts() {
        assert_eq!(enumerate_pair_extensions(&OrderPair::empty(), 0).len(), 1);
        let p = OrderPair::parse("B 1 T / B 1 T").unwrap();
        assert_eq!(enumerate_pair_extensions(&p, 1).len(), 4);
    }

    fn arb_linear(max: usize) -> impl Strategy<Value = EndpointOrder> {
        (0..=max, any::<u64>()).prop_map(|(n, seed)| random_linear(n, seed))
    }

    pub(crate) fn random_linear(n: usize, mut seed: u64) -> EndpointOrder {
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        let mut o = EndpointOrder::linear_empty();
        for v in 0..n {
            let exts = enumerate_extensions(&o, v, ExtensionMode::General);
            o = exts[(next() % exts.len() as u64) as usize].clone();
        }
        o
    }

    proptest! {
        #[test]
        fn pred_inverts_succ(o in arb_linear(5)) {
            for &t in &o.tokens()[..o.len() - 1] {
                prop_assert_eq!(o.pred(o.succ(t)), t);
            }
        }

        #[test]
        fn linear_predicate_matches_segment_overlap(o in arb_linear(5)) {
            for a in o.vertices() {
                for b in o.vertices() {
                    if a == b { continue; }
                    let (la, ra) = (o.pos(Token::L(a)), o.pos(Token::R(a)));
                    let (lb, rb) = (o.pos(Token::L(b)), o.pos(Token::R(b)));
                    let overlap = la.max(lb) < ra.min(rb);
                    prop_assert_eq!(intersects_linear(o.interval(a), o.interval(b), &o), overlap);
                    prop_assert_eq!(
                        intersects_linear(o.interval(a), o.interval(b), &o),
                        intersects_linear(o.interval(b), o.interval(a), &o)
                    );
                }
            }
        }

        #[test]
        fn restriction_inverts_extension(o in arb_linear(4)) {
            let x = o.vertices().len();
            for ext in enumerate_extensions(&o, x, ExtensionMode::General) {
                prop_assert_eq!(ext.without_vertex(x), o.clone());
            }
        }

        #[test]
        fn circular_predicate_matches_circle_geometry(n in 1usize..5, seed: u64) {
            // Random circular order, then place tokens at angles by position.
            let mut o = EndpointOrder::circular_empty();
            let mut s = seed | 1;
            for v in 0..n {
                let exts = enumerate_extensions(&o, v, ExtensionMode::Circular);
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                o = exts[((s >> 33) % exts.len() as u64) as usize].clone();
            }
            let m = o.len();
            let covers = |v: usize, point2: usize| {
                // doubled coordinates so the point between tokens is odd
                let (l, r) = (2 * o.pos(Token::L(v)), 2 * o.pos(Token::R(v)));
                if l <= r { l <= point2 && point2 <= r } else { point2 >= l || point2 <= r }
            };
            for a in 0..n {
                for b in 0..n {
                    if a == b { continue; }
                    let geo = (0..2 * m).any(|p| covers(a, p) && covers(b, p));
                    prop_assert_eq!(intersects_circular(o.interval(a), o.interval(b), &o), geo);
                }
            }
        }

        #[test]
        fn pair_extensions_project_back(n in 0usize..4, seed: u64) {
            let mut p = OrderPair::empty();
            let mut s = seed | 1;
            for v in 0..n {
                let exts = enumerate_pair_extensions(&p, v);
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                p = exts[((s >> 33) % exts.len() as u64) as usize].clone();
            }
            let exts = enumerate_pair_extensions(&p, n);
            prop_assert_eq!(exts.len(), (n + 1) * (n + 1));
            for e in exts {
                prop_assert_eq!(e.without_vertex(n), p.clone());
            }
        }

        #[test]
        fn crossing_matches_segment_geometry(n in 2usize..6, seed: u64) {
            let mut p = OrderPair::empty();
            let mut s = seed | 1;
            for v in 0..n {
                let exts = enumerate_pair_extensions(&p, v);
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                p = exts[((s >> 33) % exts.len() as u64) as usize].clone();
            }
            // segment from (pos0, 1) to (pos1, 0); two segments cross iff
            // the sign of their horizontal offset flips between the lines.
            for u in 0..n {
                for v in 0..n {
                    if u == v { continue; }
                    let d0 = p.pos(0, Token::V(u)) as i64 - p.pos(0, Token::V(v)) as i64;
                    let d1 = p.pos(1, Token::V(u)) as i64 - p.pos(1, Token::V(v)) as i64;
                    prop_assert_eq!(crosses_permutation(u, v, &p), d0 * d1 < 0);
                }
            }
        }
    }
}
