//! `rsperner`: build reflection-group orders, check Sperner-type properties
//! exactly, and rerun the reproduction claims.
//!
//! Exit codes: 0 the property holds (certificate emitted), 1 refuted with a
//! witness, 2 inconclusive, 64 usage, 65 bad input data, 66 unreadable
//! input, 69 resource budget exceeded, 70 internal error, 74 output error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use reflection_sperner::error::Error;

#[derive(Parser)]
#[command(name = "rsperner", version, about = "Sperner properties of reflection-group orders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group summaries.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Build an order on a group and write it as a poset file.
    Order {
        #[command(subcommand)]
        command: OrderCommand,
    },
    /// Check a property of a poset file.
    Check(CheckArgs),
    /// Quotient of an order by conjugation, weighted by orbit sizes.
    Quotient(QuotientArgs),
    /// Claw-product structure of G(m,1,n), or the partition search on G(2,2,n).
    Claw(ClawArgs),
    /// Rerun a reproduction claim (or `all`).
    Reproduce(ReproduceArgs),
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Order, reflections, conjugacy classes and absolute-order exponents.
    Info {
        /// `g(m,p,n)`, `h3`, `f4`, `h4` or `e6`.
        spec: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum OrderCommand {
    Build {
        #[arg(long)]
        group: String,
        /// prefix, codim or abs (abs fails if the two orders differ).
        #[arg(long, default_value = "prefix")]
        kind: String,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum CheckKind {
    Flow,
    Sperner,
    Ranked,
    LogConcave,
}

#[derive(Args)]
pub struct CheckArgs {
    /// Poset file.
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub check: CheckKind,
    /// `unit`, `file` (weights stored in the poset file) or a weight file
    /// path. Defaults to `file` when the poset file carries weights.
    #[arg(long)]
    pub weights: Option<String>,
    /// Verify this certificate instead of searching for a flow.
    #[arg(long, value_name = "PATH", conflicts_with = "witness")]
    pub certificate: Option<PathBuf>,
    /// Verify this witness instead of running the check.
    #[arg(long, value_name = "PATH")]
    pub witness: Option<PathBuf>,
    /// Write the certificate here when one is found.
    #[arg(long, value_name = "PATH")]
    pub cert_out: Option<PathBuf>,
    /// Write the witness here when one is found.
    #[arg(long, value_name = "PATH")]
    pub witness_out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args)]
pub struct QuotientArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long, default_value = "prefix")]
    pub kind: String,
    /// Quotient poset file (with orbit-size weights).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Orbit file.
    #[arg(long, value_name = "PATH")]
    pub orbits_out: Option<PathBuf>,
    /// Find a flow on the quotient, lift it and write the full certificate.
    #[arg(long, value_name = "PATH")]
    pub cert_out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args)]
pub struct ClawArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args)]
pub struct ReproduceArgs {
    /// Claim name, or `all`.
    pub claim: String,
    /// Include the long runs (H4, E6, D_6).
    #[arg(long)]
    pub big: bool,
    /// Restrict `type-d-conjecture` to D_n.
    #[arg(long)]
    pub n: Option<usize>,
    /// Directory for the certificate, witness and poset files.
    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

pub const EXIT_HOLDS: u8 = 0;
pub const EXIT_REFUTED: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_NO_INPUT: u8 = 66;
const EXIT_RESOURCE: u8 = 69;
const EXIT_SOFTWARE: u8 = 70;
const EXIT_IO: u8 = 74;

/// Input file that could not be read.
#[derive(Debug)]
pub struct NoInput(pub String);

impl std::fmt::Display for NoInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for NoInput {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<NoInput>().is_some() {
        return EXIT_NO_INPUT;
    }
    if err.downcast_ref::<std::io::Error>().is_some() {
        return EXIT_IO;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Parameter(_) | Error::NotSupported(_)) => EXIT_USAGE,
        Some(Error::Resource(_)) => EXIT_RESOURCE,
        Some(Error::Internal(_)) => EXIT_SOFTWARE,
        Some(_) => EXIT_DATA,
        None => EXIT_SOFTWARE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Group {
            command: GroupCommand::Info { spec, json },
        } => commands::group_info(&spec, json),
        Command::Order {
            command: OrderCommand::Build { group, kind, out },
        } => commands::order_build(&group, &kind, out.as_deref()),
        Command::Check(args) => commands::check(&args),
        Command::Quotient(args) => commands::quotient(&args),
        Command::Claw(args) => commands::claw(&args),
        Command::Reproduce(args) => commands::reproduce(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("rsperner: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
