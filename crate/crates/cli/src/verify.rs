use std::path::PathBuf;

use clap::Args;

use intdel_core::oracle::{is_in_class_capped, min_edge_deletion_capped, DEFAULT_MAX_N};
use intdel_core::GraphClass;

use crate::input::{read_graph, CliError};

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// One class; every class when omitted.
    #[arg(long)]
    pub class: Option<GraphClass>,
    #[arg(long)]
    pub graph: PathBuf,
    /// Largest vertex count the exhaustive search accepts.
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,
}

pub fn run(args: &VerifyArgs) -> Result<(), CliError> {
    let g = read_graph(&args.graph)?;
    if g.n() > args.max_n {
        return Err(CliError::input(format!(
            "refusing: the graph has {} vertices and the exhaustive oracle is capped at {} (see --max-n)",
            g.n(),
            args.max_n
        )));
    }
    let classes = match args.class {
        Some(c) => vec![c],
        None => GraphClass::ALL.to_vec(),
    };
    for class in classes {
        let inside = is_in_class_capped(&g, class, args.max_n).map_err(|e| CliError::input(e.to_string()))?;
        let deletions = min_edge_deletion_capped(&g, class, args.max_n).map_err(|e| CliError::input(e.to_string()))?;
        println!("{class} in-class {inside} min-deletions {deletions}");
    }
    Ok(())
}
