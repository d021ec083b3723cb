//! `reeb`: front diagrams in, Reeb orbit data out.
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use reeb_core::diagram_core::resolve;
use reeb_core::rat::{parse_q, qr};
use reeb_core::reeb_words::Bound;
use reeb_core::Q;

mod commands;
mod input;
mod output;

use output::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] reeb_core::Error),
    #[error("invalid JSON input: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_internal() => 3,
            _ => 2,
        }
    }
}

#[derive(Parser)]
#[command(name = "reeb", version, about = "Reeb orbits and chords of contact surgeries on Legendrian fronts")]
struct Cli {
    /// Front diagram file (text or JSON); standard input when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Longest word to enumerate.
    #[arg(long, global = true)]
    max_len: Option<usize>,
    /// Largest word action to enumerate, as an integer or p/q.
    #[arg(long, global = true, value_parser = rational)]
    max_action: Option<Q>,
    /// Perturbation size p/q.
    #[arg(long, global = true, value_parser = rational)]
    epsilon: Option<Q>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate and normalize a front.
    Parse,
    /// tb, rot, linking, chords and faces.
    Invariants,
    /// Orbit words with CZ, classes, gradings and actions.
    Orbits,
    /// Chord words between coefficient-0 components.
    Chords {
        /// Components to use as Λ⁰, comma separated.
        #[arg(long, value_delimiter = ',')]
        lambda0: Option<Vec<usize>>,
    },
    /// Capping rotations, and CZ of the given words.
    Cz { words: Vec<String> },
    /// H₁ presentation, Smith form, c₁ and crossing monomials.
    Homology,
    /// The chord quiver.
    Quiver,
    /// Intersection gradings. Each argument is one collection, e.g. `r1r2+r3:eta`.
    Grading { collections: Vec<String> },
    /// Differential candidates for one generator.
    Chain { word: String },
}

fn rational(s: &str) -> Result<Q, String> {
    parse_q(s).ok_or_else(|| format!("'{s}' is not a rational p/q"))
}

const DEFAULT_MAX_LEN: usize = 3;

fn bound(cli: &Cli) -> Bound {
    let mut b = Bound { max_len: cli.max_len, max_action: cli.max_action };
    if b.max_len.is_none() && b.max_action.is_none() {
        b.max_len = Some(DEFAULT_MAX_LEN);
    }
    b
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let front = input::read_front(cli.input.as_deref())?;
    let name = match &cli.command {
        Command::Parse => "parse",
        Command::Invariants => "invariants",
        Command::Orbits => "orbits",
        Command::Chords { .. } => "chords",
        Command::Cz { .. } => "cz",
        Command::Homology => "homology",
        Command::Quiver => "quiver",
        Command::Grading { .. } => "grading",
        Command::Chain { .. } => "chain",
    };
    let tables = if let Command::Parse = cli.command {
        commands::parse(&front)
    } else {
        let d = resolve(&front)?;
        let b = bound(cli);
        match &cli.command {
            Command::Parse => unreachable!(),
            Command::Invariants => commands::invariants(&d),
            Command::Orbits => commands::orbits(&d, &b, cli.epsilon)?,
            Command::Chords { lambda0 } => commands::chords(&d, lambda0.clone(), &b)?,
            Command::Cz { words } => commands::cz(&d, words)?,
            Command::Homology => commands::homology(&d),
            Command::Quiver => commands::quiver(&d)?,
            Command::Grading { collections } => commands::grading(&d, collections, &b)?,
            Command::Chain { word } => {
                let eps = cli.epsilon.unwrap_or_else(|| qr(1, 100));
                commands::chain(&d, word, eps)?
            }
        }
    };
    Ok(output::render(name, &tables, cli.format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("reeb: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
