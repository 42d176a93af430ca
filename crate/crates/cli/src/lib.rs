//! Command-line front end for `cvp-core`: input parsing, report rendering,
//! waveform export and the built-in self test.

use std::io;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod input;
pub mod render;

use commands::{AnalyzeArgs, Format, WaveformArgs};

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  selftest: at least one check failed
  2  invalid input: unreadable file, malformed document, bad parameters
  3  computation integrity check failed";

#[derive(Debug, Parser)]
#[command(
    name = "cvp",
    version,
    about = "Complex vector power analysis of three-phase systems",
    after_help = EXIT_CODES
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Table,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze one measurement document and render the report.
    #[command(after_help = EXIT_CODES)]
    Analyze {
        /// Input document (JSON).
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
        /// Add the IEEE 1459 S_+ / S_u comparison.
        #[arg(long)]
        ieee1459: bool,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export sampled waveforms of the equivalent circuit as CSV.
    #[command(after_help = EXIT_CODES)]
    Waveform {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        cycles: usize,
        /// At least 16.
        #[arg(long, default_value_t = 256)]
        samples_per_cycle: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the built-in worked examples.
    #[command(after_help = EXIT_CODES)]
    Selftest,
}

pub fn run(cli: Cli) -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let (mut out, mut err) = (stdout.lock(), stderr.lock());
    match cli.command {
        Command::Analyze {
            input,
            format,
            ieee1459,
            out: out_path,
        } => commands::cmd_analyze(
            &AnalyzeArgs {
                input,
                format: match format {
                    FormatArg::Table => Format::Table,
                    FormatArg::Json => Format::Json,
                },
                ieee1459,
                out: out_path,
            },
            &mut out,
            &mut err,
        ),
        Command::Waveform {
            input,
            cycles,
            samples_per_cycle,
            out: out_path,
        } => commands::cmd_waveform(
            &WaveformArgs {
                input,
                cycles,
                samples_per_cycle,
                out: out_path,
            },
            &mut out,
            &mut err,
        ),
        Command::Selftest => commands::cmd_selftest(&mut out, &mut err),
    }
}

/// Parses `std::env::args`. Usage errors exit 2 (clap's own code), help and
/// version exit 0.
pub fn main_entry() -> i32 {
    match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                commands::EXIT_INVALID
            } else {
                commands::EXIT_OK
            }
        }
    }
}
