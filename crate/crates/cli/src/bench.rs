use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Args;
use serde::Serialize;

use intdel_core::{solve, DpOptions, GraphClass, SolveOptions};

use crate::input::{decomposition, read_graph, CliError};

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub class: GraphClass,
    /// Directory of `.gr` files, each with an optional `.td` of the same stem.
    pub dir: PathBuf,
    /// Runs per instance; the fastest is reported.
    #[arg(long, default_value_t = 1)]
    pub repeat: usize,
    #[arg(long)]
    pub max_states: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

/// One CSV row. `error` is empty on success.
#[derive(Debug, Serialize)]
pub struct Row {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub width: usize,
    pub deletions: Option<usize>,
    pub wall_ms: Option<f64>,
    pub max_table: Option<usize>,
    pub total_generated: Option<usize>,
    pub error: String,
}

const HEADER: [&str; 9] = [
    "instance",
    "n",
    "m",
    "width",
    "deletions",
    "wall_ms",
    "max_table",
    "total_generated",
    "error",
];

fn instances(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::input(format!("cannot read {}: {e}", dir.display())))?;
    let mut out: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "gr"))
        .collect();
    out.sort();
    Ok(out)
}

fn bench_one(path: &Path, args: &BenchArgs) -> Row {
    let instance = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut row = Row {
        instance,
        n: 0,
        m: 0,
        width: 0,
        deletions: None,
        wall_ms: None,
        max_table: None,
        total_generated: None,
        error: String::new(),
    };
    let g = match read_graph(path) {
        Ok(g) => g,
        Err(e) => {
            row.error = e.message;
            return row;
        }
    };
    row.n = g.n();
    row.m = g.m();
    let td = path.with_extension("td");
    let (ntd, width, _) = match decomposition(&g, td.exists().then_some(td.as_path())) {
        Ok(d) => d,
        Err(e) => {
            row.error = e.message;
            return row;
        }
    };
    row.width = width;
    let opts = SolveOptions {
        dp: DpOptions {
            max_states: args.max_states,
            check_invariants: false,
            threads: args.threads,
            ..DpOptions::default()
        },
        ..SolveOptions::default()
    };
    for _ in 0..args.repeat.max(1) {
        let start = Instant::now();
        match solve(&g, &ntd, args.class, &opts) {
            Ok(sol) => {
                let ms = start.elapsed().as_secs_f64() * 1e3;
                row.wall_ms = Some(row.wall_ms.map_or(ms, |best: f64| best.min(ms)));
                row.deletions = Some(sol.deletions);
                row.max_table = Some(sol.stats.max_table);
                row.total_generated = Some(sol.stats.total_generated);
            }
            Err(e) => {
                row.error = e.to_string();
                break;
            }
        }
    }
    row
}

pub fn run(args: &BenchArgs) -> Result<(), CliError> {
    let paths = instances(&args.dir)?;
    let mut out = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(std::io::stdout());
    let io = |e: csv::Error| CliError::internal(format!("writing CSV: {e}"));
    out.write_record(HEADER).map_err(io)?;
    for path in &paths {
        let row = bench_one(path, args);
        if !row.error.is_empty() {
            eprintln!("{}: {}", row.instance, row.error);
        }
        out.serialize(&row).map_err(io)?;
        out.flush().map_err(|e| CliError::internal(e.to_string()))?;
    }
    Ok(())
}
