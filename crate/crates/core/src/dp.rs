//! Generic bottom-up evaluation of a nice tree decomposition.
//!
//! A class solver supplies the per-node transitions through [`ClassDp`]; the
//! driver builds one reduced table per node, keeps back-pointers for
//! certificate reconstruction and collects statistics.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::graph::Vertex;
use crate::nice::{KindLabel, NiceTreeDecomposition, NodeKind};

pub trait ClassDp: Sync {
    type State: Clone + Ord + Send + Sync + fmt::Display;
    type Key: Ord + Clone + Send + Sync;

    fn leaf(&self) -> Self::State;
    fn introduce(&self, s: &Self::State, x: Vertex) -> Vec<Self::State>;
    fn forget(&self, s: &Self::State, x: Vertex) -> Vec<Self::State>;
    fn join(&self, a: &Self::State, b: &Self::State) -> Option<Self::State>;
    /// States with different keys never dominate each other, and states
    /// with equal keys are adjacent in the state order.
    fn key(&self, s: &Self::State) -> Self::Key;
    fn cost(&self, s: &Self::State) -> usize;
    /// A lower bound on the cost of every completion of `s`. Its excess
    /// over `cost(s)` depends on the key alone, and a join costs the sum of
    /// its parts.
    fn lower_bound(&self, s: &Self::State) -> usize {
        self.cost(s)
    }
    /// `a` is at least as good as `b`, cost included.
    fn dominates(&self, a: &Self::State, b: &Self::State) -> bool;
    /// A bit set such that `a` dominates `b` only if the set of `a` is a
    /// subset of the set of `b`. Lets reduction skip most pairs cheaply.
    fn dominance_mask(&self, _s: &Self::State) -> u128 {
        0
    }
    /// States whose masks intersect never join.
    fn clash_mask(&self, _s: &Self::State) -> u128 {
        0
    }
    fn check(&self, s: &Self::State) -> Result<(), String>;
}

#[derive(Debug, Clone)]
pub struct DpOptions {
    /// Drop dominated states (exact duplicates are always merged).
    pub reduce: bool,
    pub max_states: Option<usize>,
    /// Drop states whose lower bound exceeds this.
    pub cost_bound: Option<usize>,
    pub check_invariants: bool,
    /// 1 runs sequentially, 0 uses every core.
    pub threads: usize,
    pub trace: bool,
    /// With `trace`, also list every state.
    pub trace_states: bool,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions {
            reduce: true,
            max_states: None,
            cost_bound: None,
            check_invariants: cfg!(debug_assertions),
            threads: 1,
            trace: false,
            trace_states: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DpError {
    #[error("table at node {node} grew to {size} states, over the limit of {limit}")]
    StateLimit { node: usize, size: usize, limit: usize },
    #[error("invariant broken at node {node}: {message}")]
    Invariant { node: usize, message: String },
    #[error("root table is empty")]
    EmptyRoot,
    #[error("could not build a thread pool: {0}")]
    ThreadPool(String),
}

/// Where a state came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Back {
    Leaf,
    Single(usize),
    Pair(usize, usize),
}

#[derive(Debug, Clone)]
pub struct Entry<S> {
    pub state: S,
    pub back: Back,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DpStats {
    pub nodes: usize,
    pub max_table: usize,
    /// States produced by transitions before reduction, over all nodes.
    pub total_generated: usize,
    pub table_sizes: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct DpRun<S> {
    pub tables: Vec<Vec<Entry<S>>>,
    pub stats: DpStats,
    pub trace: Vec<String>,
}

impl<S> DpRun<S> {
    pub fn root_table(&self) -> &[Entry<S>] {
        self.tables.last().map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Sorts, merges duplicates and drops every entry dominated by another.
pub(crate) fn reduce_by<S, K, FK, FC, FD>(entries: Vec<S>, key: FK, cost: FC, dominates: FD) -> Vec<S>
where
    S: Ord,
    K: Ord,
    FK: Fn(&S) -> K,
    FC: Fn(&S) -> usize,
    FD: Fn(&S, &S) -> bool,
{
    let tagged: Vec<(S, ())> = entries.into_iter().map(|s| (s, ())).collect();
    reduce_tagged(tagged, &key, &cost, &|_| 0, &dominates, true)
        .into_iter()
        .map(|(s, _)| s)
        .collect()
}

fn reduce_tagged<S, T, K>(
    mut entries: Vec<(S, T)>,
    key: &dyn Fn(&S) -> K,
    cost: &dyn Fn(&S) -> usize,
    mask: &dyn Fn(&S) -> u128,
    dominates: &dyn Fn(&S, &S) -> bool,
    prune: bool,
) -> Vec<(S, T)>
where
    S: Ord,
    T: Ord,
    K: Ord,
{
    entries.sort();
    entries.dedup_by(|a, b| a.0 == b.0);
    if !prune {
        return entries;
    }
    let mut out = Vec::with_capacity(entries.len());
    let mut group: Vec<(S, T)> = Vec::new();
    let flush = |group: &mut Vec<(S, T)>, out: &mut Vec<(S, T)>| {
        group.sort_by(|a, b| cost(&a.0).cmp(&cost(&b.0)).then_with(|| a.cmp(b)));
        let mut kept: Vec<(u128, (S, T))> = Vec::new();
        for e in group.drain(..) {
            let m = mask(&e.0);
            if kept.iter().any(|(km, k)| km & !m == 0 && dominates(&k.0, &e.0)) {
                continue;
            }
            kept.retain(|(km, k)| m & !km != 0 || !dominates(&e.0, &k.0));
            kept.push((m, e));
        }
        let mut kept: Vec<(S, T)> = kept.into_iter().map(|(_, e)| e).collect();
        kept.sort();
        out.extend(kept);
    };
    let mut current: Option<K> = None;
    for e in entries {
        let k = key(&e.0);
        if current.as_ref() != Some(&k) {
            flush(&mut group, &mut out);
            current = Some(k);
        }
        group.push(e);
    }
    flush(&mut group, &mut out);
    out.shrink_to_fit();
    out
}

/// No entry is dominated by another entry with the same key.
fn check_reduced<D: ClassDp, T>(dp: &D, table: &[(D::State, T)]) -> Result<(), String> {
    let mut groups: BTreeMap<D::Key, Vec<&D::State>> = BTreeMap::new();
    for (s, _) in table {
        groups.entry(dp.key(s)).or_default().push(s);
    }
    for group in groups.values() {
        for (i, a) in group.iter().enumerate() {
            if let Some(b) = group
                .iter()
                .enumerate()
                .find(|&(j, b)| j != i && dp.dominates(b, a))
                .map(|(_, b)| b)
            {
                return Err(format!("{a} is dominated by {b}"));
            }
        }
    }
    Ok(())
}

type Tagged<S> = Vec<(S, Back)>;
type NodeOutcome<S> = Result<NodeResult<S>, DpError>;

struct NodeResult<S> {
    table: Vec<Entry<S>>,
    generated: usize,
    trace: Vec<String>,
}

/// Parents expanded between two checks of the growing table.
const CHUNK: usize = 1 << 12;
/// Raw successors gathered before the first compaction.
const FIRST_COMPACTION: usize = 1 << 18;

fn eval_node<D: ClassDp>(
    dp: &D,
    ntd: &NiceTreeDecomposition,
    t: usize,
    tables: &[Option<Vec<Entry<D::State>>>],
    opts: &DpOptions,
) -> Result<NodeResult<D::State>, DpError> {
    let node = &ntd.nodes[t];
    let child = |i: usize| tables[node.children[i]].as_ref().expect("child evaluated first");
    let parallel = opts.threads != 1;
    let generated = AtomicUsize::new(0);
    let keep = |s: &D::State| opts.cost_bound.is_none_or(|b| dp.lower_bound(s) <= b);
    let reduce = |raw: Tagged<D::State>| {
        reduce_tagged(
            raw,
            &|s| dp.key(s),
            &|s| dp.cost(s),
            &|s| dp.dominance_mask(s),
            &|a, b| dp.dominates(a, b),
            opts.reduce,
        )
    };
    let over_limit = |size: usize| match opts.max_states {
        Some(limit) if size > limit => Err(DpError::StateLimit { node: t, size, limit }),
        _ => Ok(()),
    };
    // Expands parents chunk by chunk, compacting whenever the raw list has
    // doubled, so that a hopeless node fails before memory runs out.
    // `f` returns its successors and how many it generated before any pruning.
    let expand =
        |f: &(dyn Fn(usize) -> (usize, Tagged<D::State>) + Sync), len: usize| -> Result<Tagged<D::State>, DpError> {
            let step = |i: usize| -> Tagged<D::State> {
                let (count, out) = f(i);
                generated.fetch_add(count, Ordering::Relaxed);
                out.into_iter().filter(|(s, _)| keep(s)).collect()
            };
            let mut raw: Tagged<D::State> = Vec::new();
            let mut compact_at = FIRST_COMPACTION;
            for lo in (0..len).step_by(CHUNK) {
                let hi = (lo + CHUNK).min(len);
                let chunk: Tagged<D::State> = if parallel {
                    (lo..hi).into_par_iter().flat_map_iter(step).collect()
                } else {
                    (lo..hi).flat_map(step).collect()
                };
                if opts.check_invariants {
                    for (s, _) in &chunk {
                        dp.check(s).map_err(|message| DpError::Invariant {
                            node: t,
                            message: format!("{message} in {s}"),
                        })?;
                    }
                }
                raw.extend(chunk);
                if raw.len() > compact_at {
                    raw = reduce(raw);
                    over_limit(raw.len())?;
                    compact_at = (2 * raw.len()).max(FIRST_COMPACTION);
                }
            }
            Ok(raw)
        };
    let raw: Tagged<D::State> = match node.kind {
        NodeKind::Leaf => {
            generated.store(1, Ordering::Relaxed);
            let leaf = dp.leaf();
            if keep(&leaf) {
                vec![(leaf, Back::Leaf)]
            } else {
                Vec::new()
            }
        }
        NodeKind::Introduce(x) => {
            let c = child(0);
            expand(
                &|i| {
                    let out: Vec<_> = dp
                        .introduce(&c[i].state, x)
                        .into_iter()
                        .map(|s| (s, Back::Single(i)))
                        .collect();
                    (out.len(), out)
                },
                c.len(),
            )?
        }
        NodeKind::Forget(x) => {
            let c = child(0);
            expand(
                &|i| {
                    let out: Vec<_> = dp
                        .forget(&c[i].state, x)
                        .into_iter()
                        .map(|s| (s, Back::Single(i)))
                        .collect();
                    (out.len(), out)
                },
                c.len(),
            )?
        }
        NodeKind::Join => {
            let (a, b) = (child(0), child(1));
            let clash_a: Vec<u128> = a.iter().map(|e| dp.clash_mask(&e.state)).collect();
            let clash_b: Vec<u128> = b.iter().map(|e| dp.clash_mask(&e.state)).collect();
            // only states with equal keys can be compatible; they are adjacent,
            // and each group's products are reduced on their own
            let mut runs = Vec::new();
            let mut lo = 0;
            while lo < a.len() {
                let k = dp.key(&a[lo].state);
                let hi = lo + a[lo..].partition_point(|e| dp.key(&e.state) == k);
                let blo = b.partition_point(|e| dp.key(&e.state) < k);
                let bhi = blo + b[blo..].partition_point(|e| dp.key(&e.state) == k);
                if blo < bhi {
                    runs.push((lo..hi, blo..bhi));
                }
                lo = hi;
            }
            expand(
                &|r| {
                    let (ra, rb) = runs[r].clone();
                    let mut out = Vec::new();
                    for i in ra {
                        let room = opts
                            .cost_bound
                            .map(|bound| bound.checked_sub(dp.lower_bound(&a[i].state)));
                        out.extend(
                            rb.clone()
                                .filter(|&j| clash_a[i] & clash_b[j] == 0)
                                .filter(|&j| room.is_none_or(|r| r.is_some_and(|r| dp.cost(&b[j].state) <= r)))
                                .filter_map(|j| dp.join(&a[i].state, &b[j].state).map(|s| (s, Back::Pair(i, j)))),
                        );
                    }
                    (out.len(), reduce(out))
                },
                runs.len(),
            )?
        }
    };
    let generated = generated.into_inner();
    let reduced = reduce(raw);
    over_limit(reduced.len())?;
    if opts.check_invariants && opts.reduce {
        check_reduced(dp, &reduced).map_err(|message| DpError::Invariant { node: t, message })?;
    }
    let mut trace = Vec::new();
    if opts.trace {
        let bag: Vec<String> = node.bag.iter().map(|v| (v + 1).to_string()).collect();
        trace.push(format!(
            "node {} {} bag=[{}] table={} generated={}",
            t,
            KindLabel(node.kind),
            bag.join(" "),
            reduced.len(),
            generated
        ));
        if opts.trace_states {
            trace.extend(reduced.iter().map(|(s, _)| format!("  {s}")));
        }
    }
    Ok(NodeResult {
        table: reduced.into_iter().map(|(state, back)| Entry { state, back }).collect(),
        generated,
        trace,
    })
}

/// Evaluates every node bottom-up, level by level so that independent
/// subtrees can run in parallel. Never recurses, so deep paths are fine.
pub fn run<D: ClassDp>(dp: &D, ntd: &NiceTreeDecomposition, opts: &DpOptions) -> Result<DpRun<D::State>, DpError> {
    let pool = if opts.threads == 1 {
        None
    } else {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.threads)
                .build()
                .map_err(|e| DpError::ThreadPool(e.to_string()))?,
        )
    };
    let n = ntd.nodes.len();
    let heights = ntd.heights();
    let mut levels: Vec<Vec<usize>> = Vec::new();
    for (t, &h) in heights.iter().enumerate() {
        if levels.len() <= h {
            levels.resize(h + 1, Vec::new());
        }
        levels[h].push(t);
    }
    let mut tables: Vec<Option<Vec<Entry<D::State>>>> = (0..n).map(|_| None).collect();
    let mut stats = DpStats {
        nodes: n,
        table_sizes: vec![0; n],
        ..DpStats::default()
    };
    let mut traces: Vec<Vec<String>> = vec![Vec::new(); n];
    for level in &levels {
        let results: Vec<(usize, NodeOutcome<D::State>)> = match &pool {
            Some(pool) => pool.install(|| {
                level
                    .par_iter()
                    .map(|&t| (t, eval_node(dp, ntd, t, &tables, opts)))
                    .collect()
            }),
            _ => level
                .iter()
                .map(|&t| (t, eval_node(dp, ntd, t, &tables, opts)))
                .collect(),
        };
        for (t, r) in results {
            let r = r?;
            stats.total_generated += r.generated;
            stats.table_sizes[t] = r.table.len();
            stats.max_table = stats.max_table.max(r.table.len());
            traces[t] = r.trace;
            tables[t] = Some(r.table);
        }
    }
    let tables: Vec<Vec<Entry<D::State>>> = tables.into_iter().map(|t| t.unwrap_or_default()).collect();
    if tables.last().is_none_or(|t| t.is_empty()) {
        return Err(DpError::EmptyRoot);
    }
    Ok(DpRun {
        tables,
        stats,
        trace: traces.into_iter().flatten().collect(),
    })
}

/// Best root entry: least cost, then smallest state.
pub fn best_root<D: ClassDp>(dp: &D, run: &DpRun<D::State>) -> usize {
    let root = run.root_table();
    (0..root.len())
        .min_by(|&i, &j| {
            dp.cost(&root[i].state)
                .cmp(&dp.cost(&root[j].state))
                .then_with(|| root[i].state.cmp(&root[j].state))
        })
        .expect("root table is non-empty")
}

/// The entry used at every node on the way to root entry `root_entry`.
pub fn backtrack<S>(ntd: &NiceTreeDecomposition, run: &DpRun<S>, root_entry: usize) -> Vec<usize> {
    let n = ntd.nodes.len();
    let mut chosen = vec![usize::MAX; n];
    chosen[n - 1] = root_entry;
    for t in (0..n).rev() {
        let i = chosen[t];
        let node = &ntd.nodes[t];
        match run.tables[t][i].back {
            Back::Leaf => {}
            Back::Single(j) => chosen[node.children[0]] = j,
            Back::Pair(a, b) => {
                chosen[node.children[0]] = a;
                chosen[node.children[1]] = b;
            }
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_keeps_cheapest_and_incomparable() {
        // states (key, level, cost); a dominates b when level <= and cost <=
        let entries = vec![(0, 2, 5), (0, 2, 2), (0, 1, 3), (1, 9, 9), (0, 3, 1)];
        let out = reduce_by(entries, |s| s.0, |s| s.2, |a, b| a.0 == b.0 && a.1 <= b.1 && a.2 <= b.2);
        assert_eq!(out, vec![(0, 1, 3), (0, 2, 2), (0, 3, 1), (1, 9, 9)]);
    }

    #[test]
    fn reduce_is_order_insensitive() {
        let mut entries = vec![(0, 2, 5), (0, 2, 2), (0, 1, 3), (1, 9, 9), (0, 3, 1), (0, 1, 3)];
        let dom = |a: &(i32, i32, usize), b: &(i32, i32, usize)| a.0 == b.0 && a.1 <= b.1 && a.2 <= b.2;
        let first = reduce_by(entries.clone(), |s| s.0, |s| s.2, dom);
        entries.reverse();
        assert_eq!(reduce_by(entries, |s| s.0, |s| s.2, dom), first);
        assert_eq!(reduce_by(first.clone(), |s| s.0, |s| s.2, dom), first);
    }
}
