//! `geoprog`: batch front end for window enumeration, exponent systems,
//! bounded elimination and residue traces.
//!
//! Exit codes: 0 on success, 1 when an answer is undecided (an UNKNOWN
//! verdict or an under-approximated set), 2 on usage, input or parse errors.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] geoprog::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(geoprog::Error::Unknown(_)) => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "geoprog", version, about = "Exact computations over a geometric progression E = { rho^n : n >= 0 }")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Base of the progression, a rational > 1 [default: 2]
    #[arg(long, global = true, env = "GEOPROG_RHO")]
    pub rho: Option<String>,

    /// Output format [default: text]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// TOML file with defaults for rho, radius, depth_budget, depth and format
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Gap budget of the exponent solver [default: 64]
    #[arg(long, global = true)]
    pub depth_budget: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Values of a linear form on E^m inside (-R, R), with witnesses
    Enumerate {
        /// Comma-separated rational coefficients, e.g. 1,-1/2
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, allow_hyphen_values = true)]
        radius: Option<String>,
    },
    /// A radius r such that 0 is the only value of the form in (-r, r)
    Separation {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Satisfiability of a constraint system over exponent tuples
    Sat {
        /// Constraint file, one `a_1 ... a_m REL b` row per line; `-` reads stdin
        #[arg(long)]
        file: PathBuf,
    },
    /// An E-free description of a formula's set inside the open box (-R, R)^n
    Eliminate {
        /// Formula file; `-` reads stdin
        #[arg(long)]
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        radius: Option<String>,
        /// Coordinate order, comma-separated [default: sorted free variables]
        #[arg(long)]
        vars: Option<String>,
    },
    /// Whether a point satisfies a formula
    Member {
        #[arg(long)]
        file: PathBuf,
        /// Comma-separated rational coordinates
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        vars: Option<String>,
    },
    /// rho^k mod r for k = 0..=K and the detected cycle, if any
    Residues {
        #[arg(long = "mod", allow_hyphen_values = true)]
        modulus: String,
        #[arg(long)]
        max_k: u32,
    },
    /// Brute-force counterparts searching exponents up to a fixed depth
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    Window {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, allow_hyphen_values = true)]
        radius: Option<String>,
        /// Largest exponent tried [default: 10]
        #[arg(long)]
        depth: Option<u32>,
    },
    Esat {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        depth: Option<u32>,
    },
    Member {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        vars: Option<String>,
        #[arg(long)]
        depth: Option<u32>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((code, out)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("geoprog: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(u8, String), CliError> {
    let settings = commands::Settings::resolve(&cli.global)?;
    let outcome = match cli.command {
        Command::Enumerate { coeffs, radius } => commands::enumerate(&settings, &coeffs, radius.as_deref())?,
        Command::Separation { coeffs } => commands::separation(&settings, &coeffs)?,
        Command::Sat { file } => commands::sat(&settings, &file)?,
        Command::Eliminate { file, radius, vars } => {
            commands::eliminate(&settings, &file, radius.as_deref(), vars.as_deref())?
        }
        Command::Member { file, point, vars } => commands::member(&settings, &file, &point, vars.as_deref())?,
        Command::Residues { modulus, max_k } => commands::residues(&settings, &modulus, max_k)?,
        Command::Oracle { command } => match command {
            OracleCommand::Window { coeffs, radius, depth } => {
                commands::oracle_window(&settings, &coeffs, radius.as_deref(), depth)?
            }
            OracleCommand::Esat { file, depth } => commands::oracle_esat(&settings, &file, depth)?,
            OracleCommand::Member {
                file,
                point,
                vars,
                depth,
            } => commands::oracle_member(&settings, &file, &point, vars.as_deref(), depth)?,
        },
    };
    let code = if outcome.undecided { 1 } else { 0 };
    Ok((code, outcome.render(settings.format)))
}
