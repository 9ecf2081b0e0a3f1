//! Command-line interface: `validate`, `transfer`, `verify` and `oracle`.
//!
//! Exit codes: 0 every check passed, 1 a check failed, 2 the input could
//! not be read or is malformed, 3 an internal identity failed (a bug).

mod commands;
mod report;
mod schema;

pub use commands::{
    cmd_oracle, cmd_transfer, cmd_validate, cmd_verify, CheckLevel, OracleDiff, OracleReport,
    TransferOptions,
};
pub use report::{to_compact_json, tool_name, Check, Homology, Mode, Report};
pub use schema::{
    triples, BasisEntry, ComplexData, ContractionData, Problem, ProblemFile, StructureData,
    Truncation, DEFAULT_MAX_WEIGHT,
};

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::error::Error;

#[derive(Debug, Parser)]
#[command(name = "shlie", version, about = "Homotopy transfer of sh-Lie structures over exact rationals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check d² = 0, the contraction identities and the Lie or sh axioms.
    Validate { path: PathBuf },
    /// Transfer the structure to the small complex and write a report.
    Transfer {
        path: PathBuf,
        /// Lie algebra perturbation lemma (needs a Lie structure).
        #[arg(long, conflicts_with = "sh")]
        strict: bool,
        /// sh-Lie perturbation lemma through the loop Lie algebra.
        #[arg(long)]
        sh: bool,
        #[arg(long)]
        max_weight: Option<u32>,
        /// Degrees `lo:hi` for which homology ranks are reported.
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        degree_window: Option<[i32; 2]>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "full")]
        check_level: CheckLevel,
    },
    /// Re-run the identity checks of a report from its serialized maps.
    Verify { path: PathBuf },
    /// Compare transferred brackets with the brute-force tree formula.
    Oracle {
        path: PathBuf,
        #[arg(long, default_value_t = 3)]
        arity: usize,
    },
}

fn parse_window(s: &str) -> Result<[i32; 2], String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo: i32 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: i32 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok([lo, hi])
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Argument(_) | Error::Parse(_) | Error::Truncation { .. } => 2,
        Error::ContractViolation(_) | Error::Precondition(_) | Error::NoContraction { .. } => 1,
        Error::Internal(_) => 3,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Argument(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Problem, Error> {
    ProblemFile::parse(&read(path)?)?.build()
}

fn summarize(checks: &[Check]) {
    let mut err = std::io::stderr().lock();
    for c in checks {
        let status = if c.ok { "ok  " } else { "FAIL" };
        let _ = write!(err, "{status} {}", c.name);
        if let Some(w) = &c.witness {
            let _ = write!(err, "  [{w}]");
        }
        let _ = writeln!(err);
    }
}

fn print_json<T: serde::Serialize>(v: &T) {
    print!("{}", report::to_compact_json(v));
}

fn checks_code(checks: &[Check]) -> i32 {
    i32::from(!checks.iter().all(|c| c.ok))
}

/// Caps rayon's pool at `HPT_THREADS` when set.
fn configure_threads() {
    if let Some(n) = std::env::var("HPT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn execute(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Validate { path } => {
            let file = ProblemFile::parse(&read(&path)?)?;
            let checks = cmd_validate(&file)?;
            summarize(&checks);
            print_json(&serde_json::json!({ "checks": checks }));
            Ok(checks_code(&checks))
        }
        Command::Transfer {
            path,
            strict,
            sh,
            max_weight,
            degree_window,
            out,
            check_level,
        } => {
            let problem = load(&path)?;
            let mode = match (strict, sh) {
                (true, _) => Some(Mode::Strict),
                (_, true) => Some(Mode::Sh),
                _ => None,
            };
            let opts = TransferOptions {
                mode,
                max_weight,
                degree_window,
                level: check_level,
            };
            let start = Instant::now();
            let report = cmd_transfer(&problem, &opts)?;
            summarize(&report.checks);
            eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
            let text = report.to_json();
            match out {
                Some(p) => std::fs::write(&p, text)
                    .map_err(|e| Error::Argument(format!("{}: {e}", p.display())))?,
                None => print!("{text}"),
            }
            Ok(checks_code(&report.checks))
        }
        Command::Verify { path } => {
            let report = Report::parse(&read(&path)?)?;
            let checks = cmd_verify(&report)?;
            summarize(&checks);
            print_json(&serde_json::json!({ "checks": checks }));
            Ok(checks_code(&checks))
        }
        Command::Oracle { path, arity } => {
            let problem = load(&path)?;
            let r = cmd_oracle(&problem, arity)?;
            eprintln!(
                "arity {}: {} words, {} nonzero, {} differences",
                r.arity,
                r.words,
                r.nonzero,
                r.diffs.len()
            );
            print_json(&r);
            Ok(i32::from(!r.diffs.is_empty()))
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    configure_threads();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
