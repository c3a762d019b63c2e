//! Command-line harness: argument parsing, report assembly and exit codes.
//!
//! Exit codes: 0 all assertions hold, 1 some assertion failed, 2 bad input,
//! 3 a budget ran out before a verdict.

mod commands;
pub mod input;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use highconn::Budget;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

pub use report::{Assertion, RunReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INDETERMINATE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("budget exhausted: {0}")]
    Indeterminate(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Parser)]
#[command(name = "highconn", version, about = "Highly connected subgraphs, template extension and extremal checks")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Seed for sampled inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Search nodes per solver call.
    #[arg(long, global = true, env = "HIGHCONN_BUDGET_NODES", default_value_t = Budget::default().solver_nodes)]
    pub budget_nodes: u64,
    /// Candidate templates per witness enumeration.
    #[arg(long, global = true, env = "HIGHCONN_BUDGET_TEMPLATES", default_value_t = Budget::default().templates)]
    pub budget_templates: u64,
    /// Vertex subsets per subgraph search.
    #[arg(long, global = true, env = "HIGHCONN_BUDGET_SUBSETS", default_value_t = Budget::default().subsets)]
    pub budget_subsets: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Report path; stdout if absent.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl Common {
    pub fn budget(&self) -> Budget {
        Budget {
            solver_nodes: self.budget_nodes,
            templates: self.budget_templates,
            subsets: self.budget_subsets,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum VariantArg {
    #[value(name = "thm_main")]
    #[serde(rename = "thm_main")]
    ThmMain,
    #[value(name = "prop_4k")]
    #[serde(rename = "prop_4k")]
    Prop4k,
}

impl From<VariantArg> for highconn::Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::ThmMain => highconn::Variant::ThmMain,
            VariantArg::Prop4k => highconn::Variant::Prop4k,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Exact,
    Heuristic,
}

impl From<ModeArg> for highconn::ShrinkMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => highconn::ShrinkMode::Exact,
            ModeArg::Heuristic => highconn::ShrinkMode::Heuristic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum PipelineArg {
    #[value(name = "316k")]
    #[serde(rename = "316k")]
    ThreeSixteenth,
    #[value(name = "4k")]
    #[serde(rename = "4k")]
    FourK,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the extraction guarantee by brute force over a graph catalog.
    VerifyTheorem(VerifyArgs),
    /// Extract a highly connected subgraph of large chromatic number.
    Extract(ExtractArgs),
    /// Extend a template to a respecting coloring.
    Extend(ExtendArgs),
    /// Shrink a witness to a minimally inextensible subgraph.
    Minimalize(MinimalizeArgs),
    /// Star witness with a palette of 3k-2 colors.
    DemoStar(DemoStarArgs),
    /// Stable set joined to a clique: optimality of the chromatic bound.
    DemoH(DemoHArgs),
    /// Scan a catalog for lower-bound witnesses of g(k, m).
    SearchG(SearchGArgs),
    /// Non-isomorphic graphs up to a given order.
    Catalog(CatalogArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 7)]
    pub nmax: usize,
    /// Scan every graph up to `nmax` vertices.
    #[arg(long, conflicts_with = "samples")]
    pub exhaustive: bool,
    /// Number of seeded random graphs when not exhaustive.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = VariantArg::ThmMain)]
    pub variant: VariantArg,
    /// graph6 catalog file to scan instead of a generated one.
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    /// Largest graph order the oracle accepts.
    #[arg(long, default_value_t = highconn::lab::DEFAULT_ORACLE_BOUND)]
    pub bound: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExtractArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = VariantArg::ThmMain)]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Heuristic)]
    pub mode: ModeArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExtendArgs {
    #[arg(long, value_enum)]
    pub variant: PipelineArg,
    #[arg(long)]
    pub graph: PathBuf,
    /// Template JSON; the empty template if absent.
    #[arg(long)]
    pub template: Option<PathBuf>,
    #[arg(long)]
    pub colors: u32,
    #[arg(long)]
    pub k: usize,
    /// Stable partition as a JSON array of vertex lists; color classes of
    /// an optimal coloring if absent.
    #[arg(long)]
    pub partition: Option<PathBuf>,
    /// Include the stage-by-stage trace in the results.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MinimalizeArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub template: Option<PathBuf>,
    #[arg(long)]
    pub colors: u32,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Heuristic)]
    pub mode: ModeArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DemoStarArgs {
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DemoHArgs {
    #[arg(long)]
    pub k: usize,
    /// Palette size, at least 2k-1.
    #[arg(long)]
    pub colors: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SearchGArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 7)]
    pub nmax: usize,
    #[arg(long)]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CatalogArgs {
    #[arg(long)]
    pub nmax: usize,
    /// Connected graphs only.
    #[arg(long)]
    pub connected: bool,
}

/// What a subcommand produced before it is wrapped in a report.
#[derive(Debug, Default)]
pub struct Outcome {
    pub results: Value,
    /// Rows for CSV output.
    pub table: Vec<Value>,
    pub assertions: Vec<Assertion>,
    /// Set when part of the work ran out of budget.
    pub indeterminate: Option<String>,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::VerifyTheorem(_) => "verify-theorem",
            Command::Extract(_) => "extract",
            Command::Extend(_) => "extend",
            Command::Minimalize(_) => "minimalize",
            Command::DemoStar(_) => "demo-star",
            Command::DemoH(_) => "demo-h",
            Command::SearchG(_) => "search-g",
            Command::Catalog(_) => "catalog",
        }
    }

    fn parameters(&self) -> Value {
        let v = match self {
            Command::VerifyTheorem(a) => serde_json::to_value(a),
            Command::Extract(a) => serde_json::to_value(a),
            Command::Extend(a) => serde_json::to_value(a),
            Command::Minimalize(a) => serde_json::to_value(a),
            Command::DemoStar(a) => serde_json::to_value(a),
            Command::DemoH(a) => serde_json::to_value(a),
            Command::SearchG(a) => serde_json::to_value(a),
            Command::Catalog(a) => serde_json::to_value(a),
        };
        v.expect("arguments serialize")
    }
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let budget = cli.common.budget();
    match &cli.command {
        Command::VerifyTheorem(a) => commands::verify_theorem(a, cli.common.seed, &budget),
        Command::Extract(a) => commands::extract(a, &budget),
        Command::Extend(a) => commands::extend(a, &budget),
        Command::Minimalize(a) => commands::minimalize(a, &budget),
        Command::DemoStar(a) => commands::demo_star(a, &budget),
        Command::DemoH(a) => commands::demo_h(a, &budget),
        Command::SearchG(a) => commands::search_g(a, &budget),
        Command::Catalog(a) => commands::catalog(a),
    }
}

/// Builds the report for a parsed command line. `Err` only for input errors.
pub fn build_report(cli: &Cli) -> Result<(RunReport, i32, Vec<Value>), CliError> {
    let start = Instant::now();
    let (outcome, code) = match execute(cli) {
        Ok(o) => {
            let code = if !o.assertions.iter().all(|a| a.passed) {
                EXIT_FAILURE
            } else if o.indeterminate.is_some() {
                EXIT_INDETERMINATE
            } else {
                EXIT_PASS
            };
            (o, code)
        }
        Err(CliError::Indeterminate(msg)) => (
            Outcome {
                results: Value::Null,
                assertions: vec![Assertion::new("budget", false, msg.clone())],
                indeterminate: Some(msg),
                ..Outcome::default()
            },
            EXIT_INDETERMINATE,
        ),
        Err(e) => return Err(e),
    };
    let mut parameters = cli.command.parameters();
    if let Value::Object(map) = &mut parameters {
        let common = serde_json::to_value(&cli.common).expect("flags serialize");
        map.insert("budget".into(), serde_json::to_value(cli.common.budget()).unwrap());
        map.insert("format".into(), common["format"].clone());
    }
    let report = RunReport {
        schema_version: report::SCHEMA_VERSION,
        version: env!("CARGO_PKG_VERSION"),
        command: cli.command.name().into(),
        seed: cli.common.seed,
        parameters,
        results: outcome.results,
        assertions: outcome.assertions,
        timings: report::Timings { total_ms: start.elapsed().as_secs_f64() * 1000.0 },
    };
    Ok((report, code, outcome.table))
}

fn emit(cli: &Cli, report: &RunReport, table: &[Value]) -> Result<(), CliError> {
    let mut buf = Vec::new();
    match cli.common.format {
        Format::Json => report.write_json(&mut buf)?,
        Format::Csv => report::write_csv(table, &mut buf).map_err(|e| CliError::Io(e.into()))?,
    }
    match &cli.common.out {
        Some(path) => std::fs::write(path, buf)?,
        None => std::io::stdout().write_all(&buf)?,
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command, writes the report
/// and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
        }
    };
    match build_report(&cli).and_then(|(report, code, table)| emit(&cli, &report, &table).map(|_| code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}
