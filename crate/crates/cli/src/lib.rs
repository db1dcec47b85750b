//! Command-line front end: named scenarios and problem files.
//!
//! Every command produces a [`Report`]: prose lines, a block of stable
//! `key=value` facts, and PASS/FAIL checks. `--machine` drops the prose.

pub mod commands;
pub mod problem;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use homolift_core::surfaces::Check;

pub use problem::{parse_problem, render_problem, ProblemFile, Relator, Task};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("invalid problem: {0}")]
    Validation(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] homolift_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use homolift_core::Error as E;
        match self {
            CliError::Core(E::BudgetExceeded { .. } | E::GroupTooLarge(_) | E::Undecided(_)) => 3,
            CliError::Core(E::InconsistentVerdicts(_)) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "homolift", version, about = "Lifting surface automorphisms to homology covers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print only the key=value block and check lines.
    #[arg(long, global = true)]
    pub machine: bool,
    /// Threads for enumeration sweeps; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    /// Cap on enumeration candidates and constructed group orders.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub budget: u128,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a catalogued scenario, or list them.
    Scenario {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Order-preserving lift of a generator: `GEN [modulo SUBGROUP]`.
    SolveLift(FileArgs),
    /// Core of a subgroup: `SUBGROUP`.
    Core(FileArgs),
    /// Galois closure pipeline for a subgroup: `SUBGROUP`.
    Closure(FileArgs),
    /// Invariant subgroups: `[quotient=D1,D2] [contains=SUB] [excludes=SUB]`.
    Enumerate(FileArgs),
    /// Fingerprint of the extension modulo a subgroup: `[SUBGROUP]`.
    Identify(FileArgs),
    /// Consistency checks over everything declared in the file.
    Check(FileArgs),
}

#[derive(Debug, Args)]
pub struct FileArgs {
    #[arg(long)]
    pub file: PathBuf,
    /// Overrides the arguments of the file's `task` line.
    pub args: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub facts: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl ToString) {
        self.facts.push((key.into(), value.to_string()));
    }

    pub fn check(&mut self, text: impl Into<String>, pass: bool) {
        self.checks.push(Check { text: text.into(), pass });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self, machine: bool) -> String {
        let mut out = String::new();
        if !machine {
            for l in &self.lines {
                let _ = writeln!(out, "{l}");
            }
        }
        for (k, v) in &self.facts {
            let _ = writeln!(out, "{k}={v}");
        }
        for c in &self.checks {
            let _ = writeln!(out, "{c}");
        }
        out
    }
}

/// Run a parsed command line; returns the text for stdout and the exit code.
pub fn run(cli: &Cli) -> (String, u8) {
    match commands::dispatch(cli) {
        Ok(report) => (report.render(cli.machine), if report.passed() { 0 } else { 1 }),
        Err(e) => {
            let code = e.exit_code();
            (format!("error: {e}\n"), code)
        }
    }
}
