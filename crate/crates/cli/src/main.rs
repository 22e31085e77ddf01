mod analyze;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stickelgraph::padic::PRECISION_CAP;
use stickelgraph::stickelberger::DEFAULT_PRIME_CAP;
use stickelgraph::Error;

pub const EXIT_FAILED_CHECKS: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;

#[derive(Parser)]
#[command(name = "stickelgraph", version, about = "Bowen-Franks groups of digraph covers and Stickelberger checks")]
struct Cli {
    /// Largest ell-adic precision (in digits) tried before a valuation is declared lost.
    #[arg(long, global = true, default_value_t = PRECISION_CAP)]
    precision_cap: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Zeta polynomial, Bowen-Franks group and m of a digraph.
    Analyze {
        /// A digraph JSON file, or one of example:2.4, stickelberger:<p>, plus:<p>.
        target: String,
        /// Include the adjacency and Bowen-Franks matrices in the report.
        #[arg(long)]
        dump_matrices: bool,
    },
    /// Run a matrix of checks over primes and ell values.
    Verify(VerifyArgs),
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Inclusive range `a..b` or comma-separated list of odd primes.
    #[arg(long)]
    pub primes: String,
    /// Comma-separated primes or `all-below:N`.
    #[arg(long, default_value = "")]
    pub ells: String,
    /// Any of a, b, plus, artin, comma-separated.
    #[arg(long, default_value = "a")]
    pub checks: String,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the table here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Failure modes mapped onto exit codes.
#[derive(Debug)]
pub enum Failure {
    Parse(String),
    Precondition(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::MalformedDigraph(_) => Failure::Parse(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

fn prime_cap() -> Result<u64, Failure> {
    match std::env::var("STICKELGRAPH_PRIME_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Parse(format!("STICKELGRAPH_PRIME_CAP={v:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_PRIME_CAP),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let cap = prime_cap()?;
    match cli.command {
        Command::Analyze { target, dump_matrices } => {
            let report = analyze::analyze(&target, dump_matrices, cap)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            Ok(0)
        }
        Command::Verify(args) => verify::verify(&args, cap, cli.precision_cap),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PRECONDITION)
        }
    }
}
