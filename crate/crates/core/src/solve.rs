//! One entry point for every class.

use crate::class::GraphClass;
use crate::decomposition::heuristic_decompose;
use crate::dp::{self, ClassDp, DpError, DpOptions, DpRun, DpStats};
use crate::graph::{Edge, Graph};
use crate::interval::IntervalDp;
use crate::nice::{check_nice, make_nice, NiceTreeDecomposition};
use crate::permutation::PermutationDp;
use crate::realize::{self, Certificate};
use crate::threshold::ThresholdDp;

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub dp: DpOptions,
    /// Reconstruct and self-check a representation of the result.
    pub certificate: bool,
    /// Unless `dp.cost_bound` is set, rerun with bounds 0, 1, 2, 4, ... until
    /// a solution appears.
    pub deepening: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            dp: DpOptions::default(),
            certificate: false,
            deepening: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub class: GraphClass,
    pub deletions: usize,
    /// Statistics of the final run.
    pub stats: DpStats,
    /// Cost bounds tried, last one successful; empty without deepening.
    pub bounds: Vec<usize>,
    pub trace: Vec<String>,
    pub certificate: Option<Certificate>,
    /// Edges removed by the certificate, `(u, v)` with `u < v`.
    pub deleted_edges: Option<Vec<Edge>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error(transparent)]
    Dp(#[from] DpError),
    #[error("certificate check failed: {0}")]
    Certificate(String),
}

pub fn solve(
    g: &Graph,
    ntd: &NiceTreeDecomposition,
    class: GraphClass,
    opts: &SolveOptions,
) -> Result<Solution, SolveError> {
    check_nice(ntd, g).map_err(SolveError::InvalidDecomposition)?;
    match class.interval_mode() {
        Some(mode) => run(&IntervalDp { graph: g, mode }, g, ntd, class, opts),
        None if class == GraphClass::Permutation => run(&PermutationDp { graph: g }, g, ntd, class, opts),
        None => run(&ThresholdDp { graph: g }, g, ntd, class, opts),
    }
}

/// Solves with a min-degree decomposition.
pub fn solve_graph(g: &Graph, class: GraphClass, opts: &SolveOptions) -> Result<Solution, SolveError> {
    let td = heuristic_decompose(g);
    let ntd = make_nice(&td, g).map_err(|v| SolveError::InvalidDecomposition(v.to_string()))?;
    solve(g, &ntd, class, opts)
}

fn deepen<D: ClassDp>(
    dp: &D,
    g: &Graph,
    ntd: &NiceTreeDecomposition,
    opts: &SolveOptions,
) -> Result<(DpRun<D::State>, Vec<usize>), DpError> {
    if !opts.deepening || opts.dp.cost_bound.is_some() {
        return Ok((dp::run(dp, ntd, &opts.dp)?, Vec::new()));
    }
    let mut bounds = Vec::new();
    let mut bound = 0;
    loop {
        bounds.push(bound);
        let dp_opts = DpOptions {
            cost_bound: (bound < g.m()).then_some(bound),
            ..opts.dp.clone()
        };
        match dp::run(dp, ntd, &dp_opts) {
            Err(DpError::EmptyRoot) if bound < g.m() => bound = (2 * bound).max(bound + 1).min(g.m()),
            Ok(r) => return Ok((r, bounds)),
            Err(e) => return Err(e),
        }
    }
}

fn run<D>(
    dp: &D,
    g: &Graph,
    ntd: &NiceTreeDecomposition,
    class: GraphClass,
    opts: &SolveOptions,
) -> Result<Solution, SolveError>
where
    D: ClassDp + realize::Realizer,
{
    let (result, bounds) = deepen(dp, g, ntd, opts)?;
    let best = dp::best_root(dp, &result);
    let deletions = dp.cost(&result.root_table()[best].state);
    let (certificate, deleted_edges) = if opts.certificate {
        let chosen = dp::backtrack(ntd, &result, best);
        let cert = realize::realize(dp, ntd, &result, &chosen).map_err(SolveError::Certificate)?;
        let deleted = realize::check_certificate(g, &cert, deletions).map_err(SolveError::Certificate)?;
        (Some(cert), Some(deleted))
    } else {
        (None, None)
    };
    Ok(Solution {
        class,
        deletions,
        stats: result.stats,
        bounds,
        trace: result.trace,
        certificate,
        deleted_edges,
    })
}
