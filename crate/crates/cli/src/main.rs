use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use milnorsig_cli::app::{run_analyze, run_batch, run_selftest};
use milnorsig_cli::render::Format;

/// Signature of the Milnor fiber of the image of a finitely determined
/// map germ (C^2,0) -> (C^3,0).
#[derive(Parser)]
#[command(name = "milnorsig", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one germ file.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyze every `*.germ` file in a directory.
    Batch { dir: PathBuf },
    /// Recompute the table of worked examples.
    Selftest {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(5..=12))]
        kmax: u32,
    },
}

fn main() -> ExitCode {
    // Usage errors exit 1; status 2 is reserved for missing overrides.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Analyze { file, format, out } => run_analyze(&file, format, out.as_deref()),
        Command::Batch { dir } => run_batch(&dir),
        Command::Selftest { kmax } => run_selftest(kmax),
    }
    .into()
}
