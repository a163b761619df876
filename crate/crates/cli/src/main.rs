use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use critlab_cli::acceptance::verify_all;
use critlab_cli::suites::{self, field_spec, CliError};
use critlab_cli::VerificationReport;

#[derive(Parser)]
#[command(
    name = "critlab",
    version,
    about = "Exact checks for GL3 local models and very critical forms"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Include wall time in the report (breaks byte-for-byte reproducibility).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// ω fiber at a product point, e.g. `w0:equal,w0:distinct,s1s2:na`.
    OmegaFiber {
        #[arg(long)]
        taus: String,
    },
    /// Classical multiplicity ratio at a refinement position.
    Multiplicity {
        /// Comma-separated S3 words, one per embedding (`1`, `s1`, `s1s2`, `w0`, ...).
        #[arg(long = "wR")]
        w_r: String,
        #[arg(long, default_value_t = 1)]
        m: u64,
    },
    /// Splitting of a prime in a field set.
    Split {
        #[arg(long)]
        field_set: Option<String>,
        #[arg(long)]
        polys: Option<String>,
        #[arg(long)]
        prime: u64,
    },
    /// Residue classes of totally split primes.
    Congruences {
        #[arg(long)]
        field_set: Option<String>,
        #[arg(long)]
        polys: Option<String>,
        #[arg(long)]
        modulus: u64,
        /// Primes sampled per class.
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// Length and Bruhat identities on S_n.
    Weyl {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Components, smoothness and ω fibers of the GL3 chart.
    Steinberg,
    /// The printed resolution of the w0 component.
    Resolution,
    /// Every acceptance criterion.
    All,
}

fn run(command: &Command) -> Result<VerificationReport, CliError> {
    match command {
        Command::Verify { suite } => match suite {
            Suite::Weyl { n } => suites::weyl(*n),
            Suite::Steinberg => suites::steinberg(),
            Suite::Resolution => suites::resolution(),
            Suite::All => Ok(verify_all()),
        },
        Command::OmegaFiber { taus } => suites::omega_fiber_report(taus),
        Command::Multiplicity { w_r, m } => suites::multiplicity(w_r, *m),
        Command::Split { field_set, polys, prime } => {
            suites::split(&field_spec(field_set.as_deref(), polys.as_deref())?, *prime)
        }
        Command::Congruences { field_set, polys, modulus, k } => {
            suites::congruences(&field_spec(field_set.as_deref(), polys.as_deref())?, *modulus, *k)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli.command) {
        Ok(mut report) => {
            if cli.timings {
                report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
            }
            let text = match cli.format {
                Format::Json => format!("{}\n", report.to_json()),
                Format::Md => report.to_markdown(),
            };
            // A closed pipe (e.g. `| head`) is not an error worth a panic.
            let _ = std::io::stdout().write_all(text.as_bytes());
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("critlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
