mod commands;
mod dot;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use unicast_core::oracle::DEFAULT_BUDGET;

use commands::SearchArgs;

/// Connectivity analysis, code construction and exhaustive feasibility
/// checks for multiple-unicast instances.
///
/// Instance arguments accept a file path, `-` for stdin, or a built-in
/// example id (fig1, fig2a, fig2b, fig3, cor232).
///
/// Exit status: 0 success, 1 negative answer (infeasible, decoding fails,
/// nothing found), 2 usage or input error. `search` also returns 2 when the
/// budget runs out.
#[derive(Parser)]
#[command(name = "netcode-unicast", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the connectivity vector, node and edge counts, and sessions.
    Analyze { instance: String },
    /// Delete edges that do not contribute to any session's connectivity.
    Minimize {
        instance: String,
        /// Instance output path; the mapping goes to `<path>.map`.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Replace high-degree nodes so every internal node has degree <= 3.
    Structure {
        instance: String,
        /// Instance output path; the mapping goes to `<path>.map`.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Construct a network code and verify it at every terminal.
    Code {
        instance: String,
        #[arg(long, value_enum, default_value_t = CodeStrategy::Auto)]
        strategy: CodeStrategy,
        /// Field size (prime).
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Code output path.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Check a code file against an instance.
    Verify { instance: String, code: String },
    /// Feasibility verdict for three unit-rate sessions with the given
    /// connectivity levels.
    Classify {
        #[arg(num_args = 3, value_names = ["K1", "K2", "K3"], required = true)]
        levels: Vec<usize>,
        /// Write the counter-example instance, when one exists.
        #[arg(long)]
        emit_witness: bool,
        /// Witness output path (default `<generator>.txt`).
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Print or write a built-in example instance.
    Gen {
        id: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Exhaustive search for a linear or routing code.
    Search {
        instance: String,
        /// Field size (prime); ignored in routing mode.
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Time units of the vector code.
        #[arg(long = "T", default_value_t = 1)]
        t: usize,
        #[arg(long, value_enum, default_value_t = SearchModeArg::Linear)]
        mode: SearchModeArg,
        /// Maximum number of visited edge assignments.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Output path for a found code.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Graphviz description of the instance, optionally labeled by a code.
    ExportDot {
        instance: String,
        code: Option<String>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CodeStrategy {
    /// Pick by session count, rates and connectivity.
    Auto,
    /// Vector routing with one time unit per session.
    Routing,
    /// Two sessions with rates (1, m) and connectivity at least [1, m+1].
    #[value(name = "1m")]
    TwoSession,
    /// Three unit-rate sessions with sorted connectivity at least [1, 3, 3].
    #[value(name = "133")]
    Vector133,
}

impl CodeStrategy {
    fn name(self) -> &'static str {
        match self {
            CodeStrategy::Auto => "auto",
            CodeStrategy::Routing => "routing",
            CodeStrategy::TwoSession => "1m",
            CodeStrategy::Vector133 => "133",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchModeArg {
    Linear,
    Routing,
}

fn run(cli: Cli) -> Result<commands::Outcome, input::CliError> {
    match cli.command {
        Command::Analyze { instance } => commands::analyze(&instance),
        Command::Minimize { instance, output } => commands::minimize_cmd(&instance, output.as_deref()),
        Command::Structure { instance, output } => commands::structure_cmd(&instance, output.as_deref()),
        Command::Code { instance, strategy, q, output } => {
            commands::code_cmd(&instance, strategy, q, output.as_deref())
        }
        Command::Verify { instance, code } => commands::verify_cmd(&instance, &code),
        Command::Classify { levels, emit_witness, output } => {
            let triple = [levels[0], levels[1], levels[2]];
            commands::classify_cmd(triple, emit_witness, output.as_deref())
        }
        Command::Gen { id, output } => commands::gen_cmd(&id, output.as_deref()),
        Command::Search { instance, q, t, mode, budget, jobs, output } => commands::search_cmd(SearchArgs {
            instance: &instance,
            q,
            t,
            mode,
            budget,
            jobs,
            output: output.as_deref(),
        }),
        Command::ExportDot { instance, code, output } => {
            commands::export_dot(&instance, code.as_deref(), output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            print!("{}", outcome.report);
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
