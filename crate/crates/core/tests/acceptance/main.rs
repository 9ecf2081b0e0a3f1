//! Acceptance suite: one line per criterion with its outcome, elapsed time
//! and time limit. Exits nonzero if any criterion fails or overruns.

mod criteria_a;
mod criteria_b;
mod gen;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

/// A passing criterion returns a one-line summary, a failing one the
/// reason.
pub type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    limit_secs: u64,
    run: fn() -> Outcome,
}

const CRITERIA: &[Criterion] = &[
    Criterion { name: "contraction suite", limit_secs: 60, run: criteria_a::contraction_suite },
    Criterion { name: "CCE/Jacobi equivalence", limit_secs: 10, run: criteria_a::cce_jacobi },
    Criterion { name: "master equation", limit_secs: 60, run: criteria_a::master_equation },
    Criterion { name: "side constraints", limit_secs: 10, run: criteria_a::side_constraints_hold },
    Criterion { name: "oracle equivalence", limit_secs: 30, run: criteria_a::oracle_equivalence },
    Criterion { name: "loop-Lie closure and cobar iso", limit_secs: 30, run: criteria_b::loop_lie_closure },
    Criterion { name: "coalgebra morphisms", limit_secs: 30, run: criteria_b::coalgebra_morphisms },
    Criterion { name: "complements I/II", limit_secs: 60, run: criteria_b::complements },
    Criterion { name: "degenerate coherence", limit_secs: 10, run: criteria_b::degenerate_coherence },
    Criterion { name: "Poincaré symmetrization", limit_secs: 30, run: criteria_b::poincare },
];

fn main() -> ExitCode {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    let mut ran = 0;
    for (n, c) in CRITERIA.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| c.name.contains(f.as_str())) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(c.limit_secs);
        let outcome = match outcome {
            Ok(s) if elapsed > limit => Err(format!("over the time limit ({s})")),
            o => o,
        };
        let (tag, detail) = match &outcome {
            Ok(s) => ("PASS", s),
            Err(s) => ("FAIL", s),
        };
        println!(
            "[{tag}] {:>2}. {} ({:.2}s, limit {}s): {detail}",
            n + 1,
            c.name,
            elapsed.as_secs_f64(),
            c.limit_secs
        );
        failed += usize::from(outcome.is_err());
    }
    println!("{} of {ran} criteria passed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
