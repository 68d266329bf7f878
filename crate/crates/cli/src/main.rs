use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use catbound::error::Error;
use catbound_cli::{commands, exit_code_for};

/// Certified bounds for Lusternik–Schnirelmann-type invariants of
/// simplicial maps: exact cohomology witnesses plus interval propagation
/// with replayable certificates.
#[derive(Parser)]
#[command(name = "catbound", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check complex and map files, listing every violation.
    Validate {
        /// Complex/map JSON files; maps are validated against the complexes
        /// given in the same invocation.
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Betti numbers and cup products of a complex or pair.
    Ring {
        /// Complex JSON file.
        #[arg(long)]
        complex: PathBuf,
        /// Named subcomplex: report the relative ring of the pair.
        #[arg(long)]
        pair: Option<String>,
        /// Coefficient field: `q` or `f<p>` for a prime p.
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long)]
        json: bool,
    },
    /// The induced map on cohomology of a simplicial map.
    Induced {
        /// Map JSON file.
        #[arg(long)]
        map: PathBuf,
        /// Complex JSON files providing the map's source and target.
        #[arg(long = "complex", required = true)]
        complexes: Vec<PathBuf>,
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long)]
        json: bool,
    },
    /// Nilpotency index of the image of an induced map.
    #[command(name = "nil-image")]
    NilImage {
        /// Map JSON file (omit to use the identity map of `--pair`).
        #[arg(long)]
        map: Option<PathBuf>,
        /// Complex JSON files (the map's endpoints, or the single complex of
        /// the identity form).
        #[arg(long = "complex", required = true)]
        complexes: Vec<PathBuf>,
        /// Named subcomplex: search the identity map of the pair.
        #[arg(long)]
        pair: Option<String>,
        #[arg(long, default_value = "q")]
        field: String,
        /// Longest product length attempted.
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Candidate pool: `basis`, `combo` or `exhaustive`.
        #[arg(long, default_value = "combo")]
        search: String,
        #[arg(long)]
        json: bool,
    },
    /// Zero-divisor cup length of a space in its n-th tensor power.
    Zcl {
        #[arg(long)]
        complex: PathBuf,
        /// Tensor power n (at least 2).
        #[arg(long, default_value_t = 2)]
        grade: u8,
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value = "combo")]
        search: String,
        #[arg(long)]
        json: bool,
    },
    /// Run a scenario file: attach cohomology bounds, assert user facts,
    /// propagate, report the requested slots.
    Bounds {
        scenario: PathBuf,
        #[arg(long)]
        json: bool,
        /// Print the derivation tree under each reported interval.
        #[arg(long)]
        certificates: bool,
    },
}

fn run(cli: Cli) -> Result<(String, u8), Error> {
    match cli.command {
        Command::Validate { files } => {
            let (text, all_valid) = commands::cmd_validate(&files)?;
            Ok((text, if all_valid { 0 } else { 1 }))
        }
        Command::Ring { complex, pair, field, json } => {
            Ok((commands::cmd_ring(&complex, pair.as_deref(), &field, json)?, 0))
        }
        Command::Induced { map, complexes, field, json } => {
            Ok((commands::cmd_induced(&map, &complexes, &field, json)?, 0))
        }
        Command::NilImage { map, complexes, pair, field, max_len, search, json } => {
            let budget = commands::budget_from_flags(max_len, &search)?;
            let text = commands::cmd_nil_image(
                map.as_deref(),
                &complexes,
                pair.as_deref(),
                &field,
                &budget,
                json,
            )?;
            Ok((text, 0))
        }
        Command::Zcl { complex, grade, field, max_len, search, json } => {
            let budget = commands::budget_from_flags(max_len, &search)?;
            Ok((commands::cmd_zcl(&complex, grade, &field, &budget, json)?, 0))
        }
        Command::Bounds { scenario, json, certificates } => {
            Ok((commands::cmd_bounds(&scenario, json, certificates)?, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Reserve exit code 2 for propagation contradictions; usage
            // errors fall under the argument-error code.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            if let Error::Contradiction { lower_certificate, upper_certificate, .. } = &err {
                eprintln!("lower-bound derivation:");
                eprint!("{}", lower_certificate.render());
                eprintln!("upper-bound derivation:");
                eprint!("{}", upper_certificate.render());
            }
            ExitCode::from(exit_code_for(&err) as u8)
        }
    }
}
