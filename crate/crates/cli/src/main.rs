//! `finscheme`: checks and reports for finite semirings, their spectra,
//! finite locales, sheaf conditions, gluing and simplicial complexes.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use finscheme::semiring::DEFAULT_COLIMIT_BUDGET;
use finscheme::spectra::Visualization;
use finscheme::Error;

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "finscheme", version, about = "Finite semirings, spectra, locales and gluing")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    config: RunConfig,
}

/// Flags shared by every command.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Element budget for colimit computations.
    #[arg(long, global = true, default_value_t = DEFAULT_COLIMIT_BUDGET, value_parser = positive)]
    pub budget: usize,

    /// Longest closed path checked for monodromy.
    #[arg(long, global = true, default_value_t = finscheme::glue::DEFAULT_PATH_BOUND, value_parser = positive)]
    pub bound: usize,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a semiring file.
    Check { file: PathBuf },
    /// Print a spectrum of a semiring.
    Spectrum {
        file: PathBuf,
        #[arg(long, default_value = "prime", value_parser = parse_vis)]
        flavor: Visualization,
        /// Also write the specialization order as a DOT graph.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// List the congruences of a semiring with their primality flags.
    Congruences { file: PathBuf },
    /// The frame of open subschemes of a semiring and the comparison with its spectrum.
    Locale { file: PathBuf },
    /// The space of points of a finite frame given as a Hasse diagram.
    Stone {
        file: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Localize a semiring at an element.
    Localize { file: PathBuf, element: String },
    /// Check the sheaf axiom for a covering family against target semirings.
    SheafCheck {
        file: PathBuf,
        /// Target semiring files; the bundled catalog when omitted.
        #[arg(long = "target")]
        targets: Vec<PathBuf>,
    },
    /// Run every check on a directory of semiring files.
    Verify { dir: PathBuf },
    /// Glue a presentation after checking it is monodromy free.
    Glue {
        file: PathBuf,
        #[arg(long, default_value = "prime", value_parser = parse_vis)]
        vis: Visualization,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// The face space of a simplex or of a simplicial complex file.
    Simplex {
        /// Dimension of the simplex.
        #[arg(long, conflicts_with = "file")]
        n: Option<usize>,
        #[arg(required_unless_present = "n")]
        file: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

fn parse_vis(s: &str) -> Result<Visualization, String> {
    s.parse()
}

/// What a command produced: the two renderings and its exit status.
pub struct Outcome {
    pub text: String,
    pub structured: String,
    pub code: u8,
}

pub fn error_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Malformed(_) | Error::UnknownElement(_) | Error::Io { .. } | Error::Empty(_) => {
            EXIT_PARSE
        }
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_CHECK_FAILED,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = cli.config;
    let result = match cli.command {
        Command::Check { file } => commands::check(&file),
        Command::Spectrum { file, flavor, dot } => commands::spectrum(&file, flavor, dot.as_deref()),
        Command::Congruences { file } => commands::congruences(&file),
        Command::Locale { file } => commands::locale(&file),
        Command::Stone { file, dot } => commands::stone(&file, dot.as_deref()),
        Command::Localize { file, element } => commands::localize(&file, &element),
        Command::SheafCheck { file, targets } => commands::sheaf_check(&file, &targets),
        Command::Verify { dir } => commands::verify(&dir),
        Command::Glue { file, vis, dot } => commands::glue(&file, vis, &cfg, dot.as_deref()),
        Command::Simplex { n, file, dot } => commands::simplex(n, file.as_deref(), dot.as_deref()),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(error_code(&e));
        }
    };
    let body = match cfg.format {
        Format::Text => outcome.text,
        Format::Structured => outcome.structured + "\n",
    };
    match &cfg.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_PARSE);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(outcome.code)
}
