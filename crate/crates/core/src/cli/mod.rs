//! Command-line front end: argument parsing, reports, exit codes.

mod cache;
mod commands;
mod input;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use cache::{key_digest, lookup_or_compute, Cache, CacheEntry};
pub use input::{parse_graph, parse_pattern, parse_rational, parse_set};

use crate::budget::Budget;
use crate::error::Error;

pub const REPORT_SCHEMA: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DEFECT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "nhramsey", version, about = "Ramsey numbers of disjoint copies: search, constructions and verifiers")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Node budget for searches.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Wall-clock limit in seconds.
    #[arg(long, global = true)]
    pub timeout: Option<f64>,
    /// JSON-lines result cache.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact Ramsey number by complete search.
    Ramsey(commands::RamseyArgs),
    /// Check a colouring against targets or the critical structure.
    Verify(commands::VerifyArgs),
    /// Build an explicit colouring or pattern.
    Construct(commands::ConstructArgs),
    /// Find or check ties.
    Tie(commands::TieArgs),
    /// Build or verify absorbers and their gadgets.
    Absorber(commands::AbsorberArgs),
    /// Find or count copies of a pattern.
    Embed(commands::EmbedArgs),
    /// Density checks and dependent random choice.
    Density(commands::DensityArgs),
    /// Dump the exact parameter ledger.
    Params(commands::ParamsArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Ramsey(_) => "ramsey",
            Command::Verify(_) => "verify",
            Command::Construct(_) => "construct",
            Command::Tie(_) => "tie",
            Command::Absorber(_) => "absorber",
            Command::Embed(_) => "embed",
            Command::Density(_) => "density",
            Command::Params(_) => "params",
        }
    }
}

/// What a command produced; `verdicts` and `witnesses` must not depend on
/// the thread count, `stats` may.
#[derive(Debug, Default)]
pub struct Outcome {
    pub inputs: Value,
    pub verdicts: Value,
    pub witnesses: Value,
    pub stats: Value,
    pub exit: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Timeout { .. } | Error::BudgetExhausted { .. } => EXIT_BUDGET,
        Error::InternalExhaustion { .. }
        | Error::ConstructionFailed(_)
        | Error::ParameterMismatch(_)
        | Error::CacheCorrupt { .. }
        | Error::CacheMismatch { .. } => EXIT_DEFECT,
        _ => EXIT_PRECONDITION,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::SizeLimit { .. } => "size_limit",
        Error::Timeout { .. } => "timeout",
        Error::BudgetExhausted { .. } => "budget_exhausted",
        Error::HypothesisFails(_) => "hypothesis_fails",
        Error::Precondition(_) => "precondition",
        Error::OverlappingSets(_) => "overlapping_sets",
        Error::EmptySet => "empty_set",
        Error::InternalExhaustion { .. } => "internal_exhaustion",
        Error::ConstructionFailed(_) => "construction_failed",
        Error::ParameterMismatch(_) => "parameter_mismatch",
        Error::BankExhausted { .. } => "bank_exhausted",
        Error::LadderStuck { .. } => "ladder_stuck",
        Error::NoneFound => "none_found",
        Error::StepFailed { .. } => "step_failed",
        Error::Undecidable(_) => "undecidable",
        Error::Parse { .. } => "parse",
        Error::CacheCorrupt { .. } => "cache_corrupt",
        Error::CacheMismatch { .. } => "cache_mismatch",
        Error::Io(_) => "io",
    }
}

pub struct Context {
    pub global: Global,
}

impl Context {
    pub fn budget(&self, default_nodes: u64) -> Budget {
        let b = Budget::new(self.global.budget.unwrap_or(default_nodes));
        match self.global.timeout {
            Some(s) if s > 0.0 => b.with_deadline(Duration::from_secs_f64(s)),
            _ => b,
        }
    }
}

fn render_text(report: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, x, out);
                }
            }
            Value::String(s) if s.contains('\n') => {
                out.push_str(&format!("{prefix}:\n{s}"));
                if !s.ends_with('\n') {
                    out.push('\n');
                }
            }
            Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
            Value::Null => {}
            other => out.push_str(&format!("{prefix}: {other}\n")),
        }
    }
    let mut out = String::new();
    walk("", report, &mut out);
    out
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code together with the rendered report.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    let started = Instant::now();
    let name = cli.command.name();
    let ctx = Context { global: cli.global.clone() };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(ctx.global.threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => return (EXIT_DEFECT, format!("cannot start thread pool: {e}")),
    };
    let result = pool.install(|| commands::dispatch(&ctx, cli.command));
    let elapsed = started.elapsed().as_secs_f64();
    let (outcome, error) = match result {
        Ok(o) => (o, None),
        Err(e) => (
            Outcome {
                exit: exit_code(&e),
                ..Default::default()
            },
            Some(json!({"kind": error_kind(&e), "message": e.to_string()})),
        ),
    };
    let report = json!({
        "schema": REPORT_SCHEMA,
        "command": name,
        "inputs": outcome.inputs,
        "seed": ctx.global.seed,
        "verdicts": outcome.verdicts,
        "witnesses": outcome.witnesses,
        "error": error,
        "stats": outcome.stats,
        "timings": {"elapsed_seconds": elapsed},
    });
    let text = match ctx.global.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report is valid JSON") + "\n",
        Format::Text => render_text(&report),
    };
    if let Some(path) = &ctx.global.out {
        if let Err(e) = std::fs::write(path, &text) {
            return (EXIT_PRECONDITION, format!("cannot write {}: {e}\n", path.display()));
        }
        return (outcome.exit, String::new());
    }
    (outcome.exit, text)
}

/// Report with the thread-dependent parts removed.
pub fn deterministic_part(report: &Value) -> Value {
    let mut r = report.clone();
    if let Value::Object(m) = &mut r {
        m.remove("stats");
        m.remove("timings");
    }
    r
}
