mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Principal-minor equivalence, rank-one pencil identity testing and DPP kernel comparison.
#[derive(Debug, Parser)]
#[command(name = "minoreq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether two matrices have the same principal minors.
    Pme {
        #[command(subcommand)]
        mode: PmeMode,
    },
    /// Check a certificate against two matrix files.
    Verify {
        a: PathBuf,
        b: PathBuf,
        certificate: PathBuf,
        #[arg(long)]
        quiet: bool,
    },
    /// Decide whether two rank-one pencils have the same determinant.
    Pit {
        p1: PathBuf,
        p2: PathBuf,
        /// Cross-check against evaluation on {0,1}^m.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        shift: ShiftArgs,
    },
    /// Decide whether two kernels define the same determinantal point process.
    Dpp {
        k1: PathBuf,
        k2: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        quiet: bool,
        #[command(flatten)]
        shift: ShiftArgs,
    },
    /// Print a minimal cut, or cut-transpose along a given set.
    Cut {
        a: PathBuf,
        #[arg(long, conflicts_with = "transpose", required_unless_present = "transpose")]
        minimal: bool,
        /// Set such as `{1,4}`, written with the file's label names.
        #[arg(long, value_name = "SET")]
        transpose: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum PmeMode {
    /// Print the verdict; write the certificate only when `--out` is given.
    Check(PmeArgs),
    /// Print the verdict and always emit the certificate (to `--out` or stdout).
    Certify(PmeArgs),
}

#[derive(Debug, Args)]
struct PmeArgs {
    a: PathBuf,
    b: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cross-check against all principal minors (n <= 14).
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    quiet: bool,
    #[command(flatten)]
    shift: ShiftArgs,
}

#[derive(Debug, Args)]
struct ShiftArgs {
    /// Try seeded random diagonal shifts before the deterministic scan.
    #[arg(long)]
    randomized_shift: bool,
    #[arg(long, default_value_t = 0, requires = "randomized_shift")]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            commands::Status::Usage.into()
        }
    }
}
