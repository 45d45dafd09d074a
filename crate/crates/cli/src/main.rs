//! `tame-sl2`: command-line front end for `tame-core`.
//!
//! Every subcommand reads one JSON payload (a file path, `-` for standard
//! input, or the JSON text itself) and writes a deterministic report as
//! JSON, Graphviz DOT or plain text. Exit status is 0 on success, 2 on a
//! domain error (with a JSON error payload on standard output) and 1 on
//! malformed input.

mod commands;
mod config;
mod error;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tame_core::{Field, Q, Qi};

use crate::config::JobConfig;
use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "tame-sl2", version, about = "Exact computations in the tame automorphism group of SL2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalArgs {
    /// Extra multi-layer levels allowed in a reduction search.
    #[arg(long, global = true)]
    pub budget_depth: Option<usize>,
    /// Maximal number of unknowns per linear solve.
    #[arg(long, global = true)]
    pub budget_support: Option<usize>,
    /// Exploration depth, or chain horizon for `classify`.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// JSON array of polynomials in `x1, x3` used as elementary moves.
    #[arg(long, global = true, value_name = "FILE")]
    pub sample_p: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub field: Option<FieldArg>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// JSON configuration file; flags take precedence over its entries.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Reduce an automorphism to a linear map, recording every step.
    Reduce {
        input: String,
        /// The payload is an array of automorphisms, reduced concurrently.
        #[arg(long)]
        batch: bool,
        /// Reduce a batch on the current thread only.
        #[arg(long, requires = "batch")]
        sequential: bool,
    },
    /// Decide tameness within the budget.
    Verify { input: String },
    /// Compose an array of automorphisms, leftmost outermost.
    Compose { input: String },
    /// Invert a word, or a components quadruple via its reduction.
    Invert { input: String },
    /// Explore a ball of the square complex around the identity.
    Explore {
        /// Optional array of extra generator words.
        input: Option<String>,
    },
    /// Classify a word as an isometry of the square complex.
    Classify { input: String },
    /// Build the 4×4 grid of `{"N", "S", "E", "W"}`, or search an explored
    /// ball for grids.
    Grid {
        input: Option<String>,
        /// Search the explored ball for grids of this size instead.
        #[arg(long, value_name = "SIZE")]
        search: Option<usize>,
        /// Type of the vertex at the centre of searched grids.
        #[arg(long, value_enum, default_value_t = Centre::T1)]
        centre: Centre,
    },
    /// Conjugate a finite group to a linear (or diagonal) one.
    Linearize { input: String },
    /// Find a relation `a^p b^q = 1` and build a hyperelliptic witness.
    Resonance { input: String },
    /// Emit the named test vectors, or a single one by name.
    Examples { name: Option<String> },
    /// Compare `deg p` with the degree modulo `q - 1` on sampled words.
    DegreeReport {
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldArg {
    Q,
    Qi,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Dot,
    Pretty,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Centre {
    T1,
    T3,
}

fn dispatch<F: Field>(cmd: &Command, cfg: &JobConfig) -> Result<commands::Report, CliError> {
    match cmd {
        Command::Reduce { input, batch, sequential } => commands::reduce::<F>(input, *batch, *sequential, cfg),
        Command::Verify { input } => commands::verify::<F>(input, cfg),
        Command::Compose { input } => commands::compose::<F>(input),
        Command::Invert { input } => commands::invert::<F>(input, cfg),
        Command::Explore { input } => commands::explore::<F>(input.as_deref(), cfg),
        Command::Classify { input } => commands::classify::<F>(input, cfg),
        Command::Grid { input, search, centre } => commands::grid::<F>(input.as_deref(), *search, *centre, cfg),
        Command::Linearize { input } => commands::linearize::<F>(input),
        Command::Resonance { input } => commands::resonance::<F>(input),
        Command::Examples { name } => commands::examples::<F>(name.as_deref()),
        Command::DegreeReport { count, seed } => commands::degree_report::<F>(*count, *seed),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn run(cli: Cli) -> Result<(), (CliError, Option<PathBuf>)> {
    let cfg = JobConfig::resolve(&cli.global).map_err(|e| (e, None))?;
    let out = cfg.out.clone();
    let result = match cfg.field {
        FieldArg::Q => dispatch::<Q>(&cli.command, &cfg),
        FieldArg::Qi => dispatch::<Qi>(&cli.command, &cfg),
    };
    let text = result.and_then(|r| r.render(cfg.format)).map_err(|e| (e, out.clone()))?;
    emit(&text, out.as_ref()).map_err(|e| (e, None))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((err, out)) => {
            eprintln!("tame-sl2: {err}");
            if let Some(payload) = err.payload() {
                let _ = emit(&format!("{}\n", serde_json::to_string_pretty(&payload).expect("JSON values serialize")), out.as_ref());
            }
            ExitCode::from(err.exit_code())
        }
    }
}
