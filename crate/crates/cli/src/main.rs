use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rht_core::commands;
use rht_core::error::{Error, Result};
use rht_core::format::{parse_presentation, Presentation};
use rht_core::report::{Report, Status};
use rht_core::verify::Fault;

const DEFAULT_CAP: u32 = 12;

#[derive(Parser)]
#[command(name = "rht", version, about = "Exact rational homotopy computations")]
struct Cli {
    /// Print the versioned JSON report instead of text
    #[arg(long, global = true)]
    machine: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology ranks and representatives
    Cohomology {
        file: PathBuf,
        /// A single degree
        #[arg(long)]
        degree: Option<u32>,
        /// All degrees up to this one
        #[arg(long, env = "RHT_CAP", default_value_t = DEFAULT_CAP)]
        through: u32,
    },
    /// Minimal (or bigraded) model through a degree cap
    Model {
        file: PathBuf,
        #[arg(long, env = "RHT_CAP", default_value_t = DEFAULT_CAP)]
        through: u32,
        /// Build the bigraded model of a formal ring
        #[arg(long)]
        bigraded: bool,
    },
    /// Predicted distortion exponent of the class dual to a model generator
    Distortion {
        file: PathBuf,
        #[arg(long)]
        class: String,
        #[arg(long, env = "RHT_CAP", default_value_t = DEFAULT_CAP)]
        through: u32,
    },
    /// Decide scalability of a space descriptor such as `csum(3*CP2)`
    Scalable { descriptor: String },
    /// Pair a model generator with an iterated Whitehead product
    Pair {
        file: PathBuf,
        #[arg(long)]
        class: String,
        /// Bracket such as `[[a,c],[a,[a,b]]]`
        #[arg(long)]
        bracket: String,
        /// Also evaluate on the rescaled bracket, given as `N=2` or `2`
        #[arg(long, value_parser = parse_scale)]
        scale: Option<i64>,
        #[arg(long, env = "RHT_CAP", default_value_t = DEFAULT_CAP)]
        through: u32,
    },
    /// Run the built-in verification battery
    VerifyPaper {
        /// Run only these groups (repeatable or comma separated)
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_fault: Option<Fault>,
    },
}

fn parse_scale(s: &str) -> std::result::Result<i64, String> {
    let v = s.trim().strip_prefix("N=").unwrap_or(s.trim());
    let n: i64 = v.parse().map_err(|_| format!("bad scale `{s}`"))?;
    if n == 0 {
        return Err("scale must be nonzero".into());
    }
    Ok(n)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            if cli.machine {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            match report.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Refuted => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Report> {
    match command {
        Command::Cohomology { file, degree, through } => commands::cohomology(&load(&file)?, degree, through),
        Command::Model {
            file,
            through,
            bigraded,
        } => commands::model(&load(&file)?, through, bigraded),
        Command::Distortion { file, class, through } => commands::distortion(&load(&file)?, &class, through),
        Command::Scalable { descriptor } => commands::scalable(&descriptor),
        Command::Pair {
            file,
            class,
            bracket,
            scale,
            through,
        } => commands::pair(&load(&file)?, &class, &bracket, scale, through),
        Command::VerifyPaper {
            only,
            seed,
            inject_fault,
        } => commands::verify(only, seed, inject_fault),
    }
}

fn load(path: &Path) -> Result<Presentation> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    parse_presentation(&text).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}
