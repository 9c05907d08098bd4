//! `intdel`: exact minimum edge deletion into interval-like graph classes.
//!
//! Exit status: 0 on success, 1 on an internal failure, 2 on bad input or
//! an exceeded limit, 3 when `--oracle-check` disagrees with the solver.

mod bench;
mod input;
mod solve;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "intdel",
    version,
    about = "Exact minimum edge deletion into interval-like graph classes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one instance with the tree-decomposition DP.
    Solve(solve::SolveArgs),
    /// Recognition and minimum deletion by exhaustive search (small graphs only).
    Verify(verify::VerifyArgs),
    /// Time every instance in a directory, CSV on stdout.
    Bench(bench::BenchArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { input::EXIT_INPUT } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => solve::run(a),
        Command::Verify(a) => verify::run(a),
        Command::Bench(a) => bench::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
