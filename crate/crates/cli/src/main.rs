use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use peiffer::suite::{Suite, SuiteConfig};
use peiffer_cli::commands::{self, Op};
use peiffer_cli::{Format, LoadError, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "peiffer", version, about = "Check 2-crossed modules, their maps and homotopies")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of every module, or of one.
    CheckModule {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Check that maps are maps of 2-crossed modules.
    CheckMap {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Check homotopies, their targets, and 2-derivations.
    CheckHomotopy {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Compose named homotopies or 2-derivations.
    Compose {
        file: PathBuf,
        #[arg(long, value_parser = ["boxplus", "star", "whisker-l", "whisker-r", "otimes", "inverse", "inverse2"])]
        op: String,
        operands: Vec<String>,
        /// Monomial to evaluate the result at, e.g. `x^2`; may be repeated.
        #[arg(long)]
        query: Vec<String>,
    },
    /// Run a randomized law suite.
    Verify {
        file: PathBuf,
        #[arg(long, value_parser = ["axioms", "groupoid", "two-groupoid", "all"], default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
    /// Print a built-in module as a workspace: f2, f3, free-dom, d3, fk, incl.
    Fixture { name: String },
}

fn run(cli: Cli) -> Result<commands::Outcome, LoadError> {
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    match cli.command {
        Command::CheckModule { file, name } => commands::check_module(&file, name.as_deref(), format),
        Command::CheckMap { file, name } => commands::check_map(&file, name.as_deref(), format),
        Command::CheckHomotopy { file, name } => commands::check_homotopy(&file, name.as_deref(), format),
        Command::Compose {
            file,
            op,
            operands,
            query,
        } => commands::compose(&file, Op::parse(&op)?, &operands, &query, format),
        Command::Verify {
            file,
            suite,
            seed,
            samples,
            degree,
        } => {
            let which: Suite = suite.parse()?;
            let cfg = SuiteConfig { seed, samples, degree };
            commands::verify(&file, which, &cfg, format)
        }
        Command::Fixture { name } => commands::fixture(&name),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let LoadError::Validation { report, .. } = &e {
                eprint!("{report}");
            }
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
