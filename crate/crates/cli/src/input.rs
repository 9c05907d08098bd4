use std::fmt;
use std::fs;
use std::path::Path;

use intdel_core::{
    heuristic_decompose, make_nice, parse_graph, parse_tree_decomposition, Graph, NiceTreeDecomposition,
};

/// A failure with the exit status it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

pub const EXIT_INTERNAL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Where the decomposition came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    File,
    Heuristic,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::File => "file",
            Source::Heuristic => "heuristic",
        }
    }
}

/// Reads `td` if given, otherwise runs the min-degree heuristic.
pub fn decomposition(g: &Graph, td: Option<&Path>) -> Result<(NiceTreeDecomposition, usize, Source), CliError> {
    let (td, source) = match td {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
            let (td, n) =
                parse_tree_decomposition(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            if n != g.n() {
                return Err(CliError::input(format!(
                    "{} is for {n} vertices but the graph has {}",
                    path.display(),
                    g.n()
                )));
            }
            (td, Source::File)
        }
        None => (heuristic_decompose(g), Source::Heuristic),
    };
    let width = td.width();
    let ntd = make_nice(&td, g).map_err(|v| CliError::input(format!("invalid decomposition: {v}")))?;
    Ok((ntd, width, source))
}
