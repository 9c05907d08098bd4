//! Prints max table size against width as CSV.
//!
//! Usage: `table-curve [n] [max_k]`, defaults 24 and 4. Circular-arc and
//! permutation stop one width earlier.

use std::process::ExitCode;

use intdel_bench::table_curve;
use intdel_core::GraphClass;

const SEEDS: [u64; 3] = [1, 2, 3];
const MAX_STATES: usize = 2_000_000;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let parse = |i: usize, default: usize| args.get(i).map_or(Ok(default), |s| s.parse::<usize>());
    let (Ok(n), Ok(max_k)) = (parse(0, 24), parse(1, 4)) else {
        eprintln!("usage: table-curve [n] [max_k]");
        return ExitCode::from(2);
    };
    let mut out = csv::Writer::from_writer(std::io::stdout());
    for class in GraphClass::ALL {
        let top = match class {
            GraphClass::CircularArc | GraphClass::Permutation => max_k.saturating_sub(1),
            _ => max_k,
        };
        let ks: Vec<usize> = (1..=top).collect();
        for p in table_curve(class, n, &ks, &SEEDS, Some(MAX_STATES)) {
            if let Err(e) = out.serialize(&p) {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
        }
        let _ = out.flush();
    }
    ExitCode::SUCCESS
}
