//! The `sess` command line.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 validation or format error,
//! 3 insufficient shares, 4 verification failure.

mod commands;

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::codec::CodecError;
use crate::field::FieldError;
use crate::sss::SssError;

pub use commands::{parse_elements, share_file_name};

#[derive(Debug, Parser)]
#[command(
    name = "sess",
    version,
    about = "Space-efficient k-of-n secret sharing"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LayoutArg {
    /// Secrets at x = 0..k, shares at x = k..k+n.
    Sequential,
    /// Shares at x = 1..=n, secret coordinates drawn at random.
    RandomPoints,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split INPUT into n share files.
    Split {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// m61, p257, p31, or a decimal prime.
        #[arg(long, default_value = "m61")]
        prime: String,
        #[arg(long, value_enum, default_value_t = LayoutArg::Sequential)]
        layout: LayoutArg,
        /// Seed for the random-points layout. Omit to use system entropy.
        #[arg(long)]
        seed: Option<u64>,
        /// Treat INPUT as decimal field elements separated by whitespace or
        /// commas. Required for primes below 257.
        #[arg(long)]
        raw_elements: bool,
        #[arg(long)]
        out_dir: PathBuf,
        input: PathBuf,
    },
    /// Reconstruct the original input from share files.
    Combine {
        /// Check every surplus share against the reconstruction.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: PathBuf,
        #[arg(required = true)]
        shares: Vec<PathBuf>,
    },
    /// Print a share file's header.
    Inspect {
        /// Also print the payload values.
        #[arg(long)]
        dump: bool,
        share: PathBuf,
    },
    /// Report storage cost against element-wise Shamir sharing.
    Stats {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "m61")]
        prime: String,
        /// Plaintext length. Taken from INPUT's size when omitted.
        #[arg(long, required_unless_present = "input")]
        length: Option<u64>,
        input: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Codec(#[from] CodecError),
}

impl From<SssError> for CliError {
    fn from(e: SssError) -> Self {
        CliError::Codec(CodecError::Sss(e))
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Validation(_) => 2,
            CliError::Codec(CodecError::InsufficientShares { .. })
            | CliError::Codec(CodecError::Sss(SssError::InsufficientShares { .. })) => 3,
            CliError::Codec(CodecError::VerificationFailed { .. })
            | CliError::Codec(CodecError::Sss(SssError::VerificationFailed(_))) => 4,
            CliError::Codec(_) => 2,
        }
    }
}

/// Runs one parsed command, writing its report to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Split {
            k,
            n,
            prime,
            layout,
            seed,
            raw_elements,
            out_dir,
            input,
        } => commands::split(
            &commands::SplitArgs {
                k,
                n,
                prime,
                layout,
                seed,
                raw_elements,
                out_dir,
                input,
            },
            out,
        ),
        Command::Combine {
            verify,
            out: path,
            shares,
        } => commands::combine(&shares, &path, verify, out),
        Command::Inspect { dump, share } => commands::inspect(&share, dump, out),
        Command::Stats {
            k,
            n,
            prime,
            length,
            input,
        } => commands::stats(k, n, &prime, length, input.as_deref(), out),
    }
}

/// Parses `args`, runs the command, and returns the process exit code.
/// Errors go to `err`.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match run(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "sess: {e}");
            e.exit_code()
        }
    }
}
