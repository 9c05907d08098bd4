//! PACE 2017 text formats (`.gr` graphs, `.td` tree decompositions).
//!
//! Files number vertices and bags from 1; everything in memory is 0-indexed.

use std::fmt::Write as _;

use crate::decomposition::TreeDecomposition;
use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let fields: Vec<&str> = l.split_whitespace().collect();
        match fields.first() {
            None => None,
            Some(&"c") => None,
            Some(_) => Some((i + 1, fields)),
        }
    })
}

fn number(line: usize, field: &str, what: &str) -> Result<usize, ParseError> {
    field
        .parse()
        .map_err(|_| err(line, format!("expected {what}, found {field:?}")))
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| err(0, "missing problem line \"p tw <n> <m>\""))?;
    if header.len() != 4 || header[0] != "p" || header[1] != "tw" {
        return Err(err(hline, "malformed problem line, expected \"p tw <n> <m>\""));
    }
    let n = number(hline, header[2], "vertex count")?;
    let m = number(hline, header[3], "edge count")?;
    let mut g = Graph::empty(n);
    for (line, fields) in lines {
        if fields.len() != 2 {
            return Err(err(line, "edge lines must have exactly two vertices"));
        }
        let u = number(line, fields[0], "vertex")?;
        let v = number(line, fields[1], "vertex")?;
        for w in [u, v] {
            if w == 0 || w > n {
                return Err(err(line, format!("vertex {w} out of range 1..={n}")));
            }
        }
        g.add_edge(u - 1, v - 1).map_err(|e| match e {
            GraphError::SelfLoop(_) => err(line, format!("self-loop at vertex {u}")),
            GraphError::DuplicateEdge(..) => err(line, format!("duplicate edge {u} {v}")),
            GraphError::OutOfRange { .. } => err(line, "vertex out of range"),
        })?;
    }
    if g.m() != m {
        return Err(err(
            hline,
            format!("header declares {m} edges but {} were given", g.m()),
        ));
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p tw {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Parses a `.td` file. The `n` in the header is returned with the
/// decomposition so callers can compare it with the graph.
pub fn parse_tree_decomposition(text: &str) -> Result<(TreeDecomposition, usize), ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| err(0, "missing solution line \"s td <bags> <max bag size> <n>\""))?;
    if header.len() != 5 || header[0] != "s" || header[1] != "td" {
        return Err(err(
            hline,
            "malformed solution line, expected \"s td <bags> <max bag size> <n>\"",
        ));
    }
    let bag_count = number(hline, header[2], "bag count")?;
    let max_bag = number(hline, header[3], "max bag size")?;
    let n = number(hline, header[4], "vertex count")?;
    let mut bags: Vec<Option<Vec<usize>>> = vec![None; bag_count];
    let mut edges = Vec::new();
    for (line, fields) in lines {
        if fields[0] == "b" {
            if fields.len() < 2 {
                return Err(err(line, "bag line without an id"));
            }
            let id = number(line, fields[1], "bag id")?;
            if id == 0 || id > bag_count {
                return Err(err(line, format!("bag id {id} out of range 1..={bag_count}")));
            }
            if bags[id - 1].is_some() {
                return Err(err(line, format!("bag {id} defined twice")));
            }
            let mut bag = Vec::with_capacity(fields.len() - 2);
            for f in &fields[2..] {
                let v = number(line, f, "vertex")?;
                if v == 0 || v > n {
                    return Err(err(line, format!("vertex {v} out of range 1..={n}")));
                }
                bag.push(v - 1);
            }
            let before = bag.len();
            bag.sort_unstable();
            bag.dedup();
            if bag.len() != before {
                return Err(err(line, format!("bag {id} repeats a vertex")));
            }
            bags[id - 1] = Some(bag);
        } else {
            if fields.len() != 2 {
                return Err(err(line, "tree edge lines must have exactly two bag ids"));
            }
            let a = number(line, fields[0], "bag id")?;
            let b = number(line, fields[1], "bag id")?;
            for x in [a, b] {
                if x == 0 || x > bag_count {
                    return Err(err(line, format!("bag id {x} out of range 1..={bag_count}")));
                }
            }
            if a == b {
                return Err(err(line, "tree edge is a loop"));
            }
            edges.push((a - 1, b - 1));
        }
    }
    let bags: Vec<Vec<usize>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| err(hline, format!("bag {} declared but never defined", i + 1))))
        .collect::<Result<_, _>>()?;
    let td = TreeDecomposition::new(bags, edges);
    if td.max_bag_size() != max_bag {
        return Err(err(
            hline,
            format!(
                "header declares max bag size {max_bag} but the largest bag has {}",
                td.max_bag_size()
            ),
        ));
    }
    if bag_count > 0 && td.tree_edges.len() != bag_count - 1 {
        return Err(err(hline, "tree edges do not form a tree"));
    }
    if !is_connected_tree(&td) {
        return Err(err(hline, "tree edges do not form a tree"));
    }
    Ok((td, n))
}

fn is_connected_tree(td: &TreeDecomposition) -> bool {
    let k = td.bags.len();
    if k == 0 {
        return true;
    }
    let adj = td.adjacency();
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(t) = stack.pop() {
        for &u in &adj[t] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == k
}

pub fn write_tree_decomposition(td: &TreeDecomposition, n: usize) -> String {
    let mut out = format!("s td {} {} {}\n", td.bags.len(), td.max_bag_size(), n);
    for (i, bag) in td.bags.iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in &td.tree_edges {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}
