//! Instances and measurements shared by the criterion benches and the
//! `table-curve` report.

use std::time::Instant;

use serde::Serialize;

use intdel_core::generate::partial_ktree;
use intdel_core::{
    decompose_with_order, make_nice, solve, DpOptions, Graph, GraphClass, NiceTreeDecomposition, SolveOptions,
};

/// Fraction of k-tree edges kept by [`instance`].
pub const KEEP: f64 = 0.8;

pub struct Instance {
    pub graph: Graph,
    pub ntd: NiceTreeDecomposition,
    pub width: usize,
}

/// A partial k-tree with the decomposition its construction order gives.
pub fn instance(n: usize, k: usize, seed: u64) -> Instance {
    let (graph, order) = partial_ktree(n, k, KEEP, seed);
    let td = decompose_with_order(&graph, &order);
    let width = td.width();
    let ntd = make_nice(&td, &graph).expect("elimination orders give valid decompositions");
    Instance { graph, ntd, width }
}

/// A path, which has width 1.
pub fn path_instance(n: usize) -> Instance {
    let graph = Graph::path(n);
    let order: Vec<usize> = (0..n).collect();
    let td = decompose_with_order(&graph, &order);
    let width = td.width();
    let ntd = make_nice(&td, &graph).expect("elimination orders give valid decompositions");
    Instance { graph, ntd, width }
}

pub fn bench_options(max_states: Option<usize>) -> SolveOptions {
    SolveOptions {
        dp: DpOptions {
            check_invariants: false,
            max_states,
            ..DpOptions::default()
        },
        ..SolveOptions::default()
    }
}

/// One point of the table size curve.
#[derive(Debug, Clone, Serialize)]
pub struct CurvePoint {
    pub class: String,
    pub k: usize,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub width: usize,
    pub deletions: Option<usize>,
    pub max_table: Option<usize>,
    pub total_generated: Option<usize>,
    pub wall_ms: f64,
    pub error: String,
}

/// Solves one partial k-tree per `(k, seed)` and records the largest table.
pub fn table_curve(
    class: GraphClass,
    n: usize,
    ks: &[usize],
    seeds: &[u64],
    max_states: Option<usize>,
) -> Vec<CurvePoint> {
    let opts = bench_options(max_states);
    let mut out = Vec::new();
    for &k in ks {
        for &seed in seeds {
            let inst = instance(n, k, seed);
            let start = Instant::now();
            let result = solve(&inst.graph, &inst.ntd, class, &opts);
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            let mut p = CurvePoint {
                class: class.to_string(),
                k,
                seed,
                n: inst.graph.n(),
                m: inst.graph.m(),
                width: inst.width,
                deletions: None,
                max_table: None,
                total_generated: None,
                wall_ms,
                error: String::new(),
            };
            match result {
                Ok(s) => {
                    p.deletions = Some(s.deletions);
                    p.max_table = Some(s.stats.max_table);
                    p.total_generated = Some(s.stats.total_generated);
                }
                Err(e) => p.error = e.to_string(),
            }
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_have_requested_width() {
        for k in 1..=3 {
            let inst = instance(30, k, 7);
            assert!(inst.width <= k);
            assert_eq!(inst.graph.n(), 30);
        }
        assert_eq!(path_instance(50).width, 1);
    }

    #[test]
    fn curve_grows_with_width() {
        let pts = table_curve(GraphClass::Interval, 12, &[1, 2], &[1], Some(1_000_000));
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().all(|p| p.error.is_empty()));
        assert!(pts[0].max_table.unwrap() <= pts[1].max_table.unwrap());
    }
}
