use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use intdel_core::nice::KindLabel;
use intdel_core::oracle::{min_edge_deletion_bruteforce, OracleError};
use intdel_core::{solve, DpError, DpOptions, GraphClass, SolveError, SolveOptions};

use crate::input::{decomposition, read_graph, CliError, EXIT_MISMATCH};

pub const SCHEMA: &str = "intdel.solve.v1";

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// interval, proper-interval, trivially-perfect, circular-arc, permutation or threshold
    #[arg(long)]
    pub class: GraphClass,
    /// Graph in PACE .gr format.
    #[arg(long)]
    pub graph: PathBuf,
    /// Tree decomposition in PACE .td format; a min-degree heuristic is used otherwise.
    #[arg(long)]
    pub td: Option<PathBuf>,
    /// Reconstruct a representation of the result and the deleted edges.
    #[arg(long)]
    pub certificate: bool,
    /// Compare with the exhaustive oracle when the graph is small enough.
    #[arg(long)]
    pub oracle_check: bool,
    /// Per-node table sizes.
    #[arg(long)]
    pub stats: bool,
    /// Machine-readable report on stdout
    #[arg(long)]
    pub json: bool,
    /// Abort once a node table exceeds this many states.
    #[arg(long)]
    pub max_states: Option<usize>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Print every node as it is evaluated, to stderr.
    #[arg(long)]
    pub trace: bool,
    /// With --trace, list every state too.
    #[arg(long)]
    pub trace_states: bool,
    /// Keep dominated states.
    #[arg(long)]
    pub no_reduce: bool,
    /// Solve in one unbounded pass instead of raising a cost bound.
    #[arg(long)]
    pub no_deepening: bool,
    /// Check abstraction invariants after every transition.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Serialize)]
pub struct NodeStat {
    pub node: usize,
    pub kind: String,
    pub bag_size: usize,
    pub table: usize,
}

#[derive(Debug, Serialize)]
pub struct CertificateReport {
    pub representation: String,
    /// 1-indexed.
    pub deleted_edges: Vec<[usize; 2]>,
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub deletions: Option<usize>,
    pub agrees: Option<bool>,
    pub skipped: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub schema: &'static str,
    pub class: String,
    pub n: usize,
    pub m: usize,
    pub width: usize,
    pub decomposition: &'static str,
    pub deletions: usize,
    pub bounds: Vec<usize>,
    pub max_table: usize,
    pub total_generated: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub node_stats: Option<Vec<NodeStat>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

fn solve_error(e: SolveError) -> CliError {
    match e {
        SolveError::InvalidDecomposition(m) => CliError::input(format!("invalid decomposition: {m}")),
        SolveError::Dp(e @ DpError::StateLimit { .. }) => {
            CliError::input(format!("{e}; raise --max-states or supply a narrower --td"))
        }
        e => CliError::internal(e.to_string()),
    }
}

pub fn run(args: &SolveArgs) -> Result<(), CliError> {
    let g = read_graph(&args.graph)?;
    let (ntd, width, source) = decomposition(&g, args.td.as_deref())?;
    if !args.json {
        println!("width {width} ({} decomposition)", source.name());
    }
    let opts = SolveOptions {
        dp: DpOptions {
            reduce: !args.no_reduce,
            max_states: args.max_states,
            check_invariants: args.check,
            threads: args.threads,
            trace: args.trace,
            trace_states: args.trace_states,
            ..DpOptions::default()
        },
        certificate: args.certificate,
        deepening: !args.no_deepening,
    };
    let sol = solve(&g, &ntd, args.class, &opts).map_err(solve_error)?;
    for line in &sol.trace {
        eprintln!("{line}");
    }
    let certificate = sol.certificate.as_ref().map(|c| CertificateReport {
        representation: c.to_string(),
        deleted_edges: sol
            .deleted_edges
            .iter()
            .flatten()
            .map(|&(u, v)| [u + 1, v + 1])
            .collect(),
    });
    let node_stats = args.stats.then(|| {
        ntd.nodes
            .iter()
            .enumerate()
            .map(|(i, node)| NodeStat {
                node: i,
                kind: KindLabel(node.kind).to_string(),
                bag_size: node.bag.len(),
                table: sol.stats.table_sizes[i],
            })
            .collect()
    });
    let oracle = args
        .oracle_check
        .then(|| match min_edge_deletion_bruteforce(&g, args.class) {
            Ok(d) => OracleReport {
                deletions: Some(d),
                agrees: Some(d == sol.deletions),
                skipped: None,
            },
            Err(e @ OracleError::TooLarge { .. }) => OracleReport {
                deletions: None,
                agrees: None,
                skipped: Some(e.to_string()),
            },
        });
    let report = SolveReport {
        schema: SCHEMA,
        class: args.class.name().to_string(),
        n: g.n(),
        m: g.m(),
        width,
        decomposition: source.name(),
        deletions: sol.deletions,
        bounds: sol.bounds.clone(),
        max_table: sol.stats.max_table,
        total_generated: sol.stats.total_generated,
        certificate,
        node_stats,
        oracle,
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print_text(&report);
    }
    match &report.oracle {
        Some(OracleReport {
            agrees: Some(false),
            deletions: Some(d),
            ..
        }) => Err(CliError {
            code: EXIT_MISMATCH,
            message: format!("oracle mismatch: dp {} vs oracle {d}", report.deletions),
        }),
        _ => Ok(()),
    }
}

fn print_text(r: &SolveReport) {
    println!("class {}", r.class);
    println!("graph n={} m={}", r.n, r.m);
    println!("deletions {}", r.deletions);
    println!("max table {}, states generated {}", r.max_table, r.total_generated);
    if let Some(c) = &r.certificate {
        println!("representation {}", c.representation);
        let edges: Vec<String> = c.deleted_edges.iter().map(|[u, v]| format!("{u}-{v}")).collect();
        println!("deleted edges [{}]", edges.join(" "));
    }
    if let Some(stats) = &r.node_stats {
        println!("node kind bag table");
        for s in stats {
            println!("{} {} {} {}", s.node, s.kind, s.bag_size, s.table);
        }
    }
    if let Some(o) = &r.oracle {
        match (o.deletions, &o.skipped) {
            (Some(d), _) if d == r.deletions => println!("oracle {d} (agrees)"),
            (Some(d), _) => println!("oracle {d} (MISMATCH)"),
            (None, Some(why)) => println!("oracle skipped: {why}"),
            (None, None) => {}
        }
    }
}
