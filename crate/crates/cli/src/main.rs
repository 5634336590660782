use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::CliError;

/// Ordinal patterns of random walks: equivalence classes, structure of edge
/// diagrams, and seeded frequency estimates.
///
/// Patterns are digit strings such as 3124 for n <= 9, or comma-separated
/// values such as 10,2,1,3,4,5,6,7,8,9 for any n.
///
/// Exit status: 0 on success, 1 for a negative answer (patterns not
/// equivalent, or a class failing the homogeneity test), 2 for bad input or
/// a size limit.
#[derive(Parser, Debug)]
#[command(name = "ordwalk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partition S_n into equivalence classes.
    Classes {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ClassFormat::Table)]
        format: ClassFormat,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Decide whether two patterns are equivalent.
    Check {
        pi: String,
        tau: String,
        /// Print a shortest sequence of valid flips from PI to TAU.
        #[arg(long)]
        witness: bool,
    },
    /// Valid intervals, bordered blocks, irreducible and cohesive intervals.
    Structure {
        pi: String,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Estimate pattern frequencies and test each class for homogeneity.
    ///
    /// DIST is kind:param,param with kind one of uniform:lo,hi,
    /// gaussian:mean,sd, exponential:rate, cauchy:loc,scale,
    /// lognormal:mu,sigma, shifted-uniform:lo,hi (lo > 0). The JSON form is
    /// described by `ordwalk schema`.
    Simulate(commands::SimulateArgs),
    /// Edge diagram and step matrix of a pattern.
    Diagram { pi: String },
    /// Print the JSON schema for step distributions.
    Schema,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassFormat {
    Table,
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TextFormat {
    Text,
    Json,
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Classes {
            n,
            format,
            workers,
            out,
        } => commands::classes(n, format, workers, out.as_deref()),
        Command::Check { pi, tau, witness } => commands::check(&pi, &tau, witness),
        Command::Structure { pi, format } => commands::structure(&pi, format),
        Command::Simulate(args) => commands::simulate(args),
        Command::Diagram { pi } => commands::diagram(&pi),
        Command::Schema => {
            print!("{}", commands::DISTRIBUTION_SCHEMA);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
