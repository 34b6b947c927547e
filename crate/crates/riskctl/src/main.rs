//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for input or usage errors, 2 when the input
//! is well-formed but describes an invalid structure (an order cycle).
//! Reports go to standard output, diagnostics to the error stream.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use relrisk::{classify, classify_quotient, OrderError};
use riskctl::dot::dot_export;
use riskctl::model::ModelFile;
use riskctl::parse::{parse, Severity};
use riskctl::report::{check_report, classify_report, push_report, solve_report};

#[derive(Parser)]
#[command(
    name = "riskctl",
    version,
    about = "Analyze preference orders, ordinal games, and decision models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the structural summary of a poset.
    Check {
        /// Model file.
        file: PathBuf,
        /// Name of the poset to inspect.
        #[arg(long)]
        poset: String,
    },
    /// Classify the risk situation a poset describes.
    Classify {
        /// Model file.
        file: PathBuf,
        /// Name of the poset to classify.
        #[arg(long)]
        poset: String,
        /// Classify the quotient by this partition instead.
        #[arg(long)]
        partition: Option<String>,
    },
    /// Solve an ordinal game: dominance, cautious strategies, and equilibria.
    Solve {
        /// Model file.
        file: PathBuf,
        /// Name of the game to solve.
        #[arg(long)]
        game: String,
    },
    /// Push a decision model forward to its outcome measures.
    Push {
        /// Model file.
        file: PathBuf,
        /// Name of the stochastic model to analyze.
        #[arg(long)]
        stoch: String,
    },
    /// Export the Hasse diagram of a poset as Graphviz DOT.
    Dot {
        /// Model file.
        file: PathBuf,
        /// Name of the poset to export.
        #[arg(long)]
        poset: String,
    },
}

impl Command {
    fn file(&self) -> &PathBuf {
        match self {
            Command::Check { file, .. }
            | Command::Classify { file, .. }
            | Command::Solve { file, .. }
            | Command::Push { file, .. }
            | Command::Dot { file, .. } => file,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };

    let file = cli.command.file();
    let text = match fs::read_to_string(file) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: {}: {err}", file.display());
            return ExitCode::from(1);
        }
    };

    let outcome = parse(&text);
    for diagnostic in &outcome.diagnostics {
        let tag = match diagnostic.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        eprintln!(
            "{tag}: {}:{}: {}",
            diagnostic.pos.line, diagnostic.pos.col, diagnostic.message
        );
        if let Some(hint) = &diagnostic.hint {
            eprintln!("  hint: {hint}");
        }
    }
    let model = match outcome.model {
        Some(model) => model,
        None => {
            return ExitCode::from(if outcome.errors_are_structural() { 2 } else { 1 });
        }
    };

    run(&cli.command, &model)
}

fn run(command: &Command, model: &ModelFile) -> ExitCode {
    match command {
        Command::Check { poset, .. } => {
            let Some(entry) = model.poset(poset) else {
                return unknown("poset", poset);
            };
            print!("{}", check_report(&entry.name, &entry.poset));
        }
        Command::Classify { poset, partition: None, .. } => {
            let Some(entry) = model.poset(poset) else {
                return unknown("poset", poset);
            };
            print!("{}", classify_report(&entry.name, None, &classify(&entry.poset)));
        }
        Command::Classify { poset, partition: Some(partition), .. } => {
            let Some(entry) = model.poset(poset) else {
                return unknown("poset", poset);
            };
            let Some(part) = model.partition(partition) else {
                return unknown("partition", partition);
            };
            if part.poset_name != entry.name {
                eprintln!(
                    "error: partition `{}` is on poset `{}`, not `{}`",
                    part.name, part.poset_name, entry.name
                );
                return ExitCode::from(1);
            }
            match classify_quotient(&entry.poset, &part.partition) {
                Ok(result) => {
                    let context = Some((part.name.as_str(), part.partition.block_count()));
                    print!("{}", classify_report(&entry.name, context, &result));
                }
                Err(err @ OrderError::QuotientCycle(_)) => {
                    eprintln!("error: {}:{}: {err}", part.pos.line, part.pos.col);
                    return ExitCode::from(2);
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    return ExitCode::from(1);
                }
            }
        }
        Command::Solve { game, .. } => {
            let Some(entry) = model.game(game) else {
                return unknown("game", game);
            };
            print!("{}", solve_report(&entry.name, &entry.game));
        }
        Command::Push { stoch, .. } => {
            let Some(entry) = model.stoch(stoch) else {
                return unknown("stoch", stoch);
            };
            print!("{}", push_report(&entry.name, &entry.model));
        }
        Command::Dot { poset, .. } => {
            let Some(entry) = model.poset(poset) else {
                return unknown("poset", poset);
            };
            print!("{}", dot_export(&entry.poset));
        }
    }
    ExitCode::SUCCESS
}

fn unknown(kind: &str, name: &str) -> ExitCode {
    eprintln!("error: no {kind} named `{name}` in the model file");
    ExitCode::from(1)
}
