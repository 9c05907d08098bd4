//! Exact minimum edge deletion into interval, proper interval, trivially
//! perfect, circular-arc, permutation and threshold graphs, by dynamic
//! programming over nice tree decompositions.

pub mod class;
pub mod decomposition;
pub mod dp;
pub mod generate;
pub mod graph;
pub mod interval;
pub mod io;
pub mod nice;
pub mod oracle;
pub mod order;
pub mod permutation;
pub mod realize;
pub mod solve;
pub mod threshold;

pub use class::GraphClass;
pub use decomposition::{
    decompose_with_order, heuristic_decompose, validate_decomposition, TreeDecomposition, Violation,
};
pub use dp::{ClassDp, DpError, DpOptions, DpStats};
pub use graph::{Edge, Graph, GraphError, Vertex};
pub use interval::{IntervalAbstraction, IntervalMode};
pub use io::{parse_graph, parse_tree_decomposition, write_graph, write_tree_decomposition, ParseError};
pub use nice::{check_nice, make_nice, NiceNode, NiceTreeDecomposition, NodeKind};
pub use oracle::{OracleError, Witness};
pub use order::{
    crosses_permutation, enumerate_extensions, enumerate_pair_extensions, intersects_circular, intersects_linear,
    EndpointOrder, ExtensionMode, OrderMode, OrderPair, Token,
};
pub use permutation::PermutationAbstraction;
pub use realize::Certificate;
pub use solve::{solve, solve_graph, Solution, SolveError, SolveOptions};
pub use threshold::ThresholdAbstraction;
