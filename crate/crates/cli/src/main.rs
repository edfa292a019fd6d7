//! `latcover`: enumeration, catalog verification, modular scans, ideal
//! membership checks and binary-form checks from the command line.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use latcover::forms::{BinaryForm, Variant};
use latcover::ratmat::RatMat2;

use commands::CommandError;

const EXIT_FAILED: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "latcover",
    version,
    about = "Minimal lattice coverings of Z^2 and the checks built on them"
)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,

    /// Worker threads for the search and the ideal computations
    #[arg(
        long,
        env = "LATTICE_COVER_THREADS",
        default_value_t = 1,
        global = true
    )]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Enumerate the minimal coverings and optionally write the catalog
    Enumerate {
        #[arg(long, default_value_t = 6)]
        slots: usize,
        /// Catalog file to write
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also check the number of search leaves before pruning
        #[arg(long)]
        raw_count: bool,
    },
    /// Run the catalog checks on a catalog file
    VerifyCatalog {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Run the residue scans (all moduli unless one is given)
    VerifyModular {
        #[arg(long, value_parser = ["3", "4", "5", "9"])]
        modulus: Option<String>,
    },
    /// Decide membership of 3 in each ideal system
    VerifyGroebner,
    /// Binary form checks
    #[command(subcommand)]
    Form(FormCommand),
    /// Every check above, in one report
    VerifyAll,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum FormCommand {
    /// Apply the order-3 criterion to F with automorphism group T^-1 G T
    Check {
        /// Coefficients, highest power of X first (e.g. `0,1,1,0`)
        #[arg(long, allow_hyphen_values = true)]
        coeffs: BinaryForm,
        /// Conjugating matrix T, row-major `a,b;c,d`
        #[arg(long, allow_hyphen_values = true, default_value = "1,0;0,1")]
        conj: RatMat2,
        #[arg(long, default_value = "d3")]
        variant: Variant,
        /// Fail unless the verdict matches
        #[arg(long)]
        expect: Option<bool>,
    },
    /// Compare the value sets of two forms on boxes
    Compare {
        #[arg(long, allow_hyphen_values = true)]
        f: BinaryForm,
        #[arg(long, allow_hyphen_values = true)]
        g: BinaryForm,
        /// Half-width of the box whose values must be matched
        #[arg(long, default_value_t = 10)]
        n: i64,
        /// Half-width of the box searched for matches
        #[arg(long, default_value_t = 60)]
        m: i64,
    },
}

fn run(cli: Cli) -> Result<report::Report, CommandError> {
    let threads = cli.threads.max(1);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CommandError::Failed(e.to_string()))?;
    match cli.command {
        Command::Enumerate {
            slots,
            out,
            raw_count,
        } => commands::enumerate(slots, out.as_deref(), raw_count, threads),
        Command::VerifyCatalog { input } => commands::verify_catalog(&input),
        Command::VerifyModular { modulus } => {
            commands::verify_modular(modulus.map(|m| m.parse().expect("validated by clap")))
        }
        Command::VerifyGroebner => commands::verify_groebner(),
        Command::Form(FormCommand::Check {
            coeffs,
            conj,
            variant,
            expect,
        }) => commands::form_check(&coeffs, &conj, variant, expect),
        Command::Form(FormCommand::Compare { f, g, n, m }) => commands::form_compare(&f, &g, n, m),
        Command::VerifyAll => commands::verify_all(threads),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(r) => {
            let text = match format {
                Format::Text => r.render_text(),
                Format::Json => r.render_json(),
            };
            print!("{text}");
            if r.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILED)
            }
        }
        Err(CommandError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
