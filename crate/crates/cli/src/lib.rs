//! Command line front end for the `rapsi` library.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Parser, Subcommand};
use thiserror::Error;

pub mod bench;
pub mod commands;
pub mod report;
pub mod verify;

use commands::{GammaMode, Method, Settings};
use report::{emit, Format, Report};
use verify::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_UNATTAINABLE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] rapsi::Error),
    #[error("{0} check(s) failed")]
    Verification(usize),
    #[error("write failed: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use rapsi::Error as E;
        match self {
            CliError::Input(_) | CliError::Io(_) => EXIT_INPUT,
            CliError::Verification(_) => EXIT_VERIFICATION,
            CliError::Core(e) => match e {
                E::UnattainableTolerance { .. } | E::QuadratureNotConverged { .. } => {
                    EXIT_UNATTAINABLE
                }
                E::Inconsistent { .. } => EXIT_VERIFICATION,
                _ => EXIT_INPUT,
            },
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "rapsi", version, about = "Digamma, Euler's constant and odd zeta values from rapidly convergent series")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ψ(x+1) for x > 0.
    Psi {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value_t = 1e-13)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Method::Ramanujan)]
        method: Method,
        /// Use exactly this many outer terms instead of planning them.
        #[arg(long)]
        terms: Option<u64>,
    },
    /// ψ′(x+1) for x > 0 away from positive integers.
    PsiPrime {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value_t = 1e-13)]
        tol: f64,
        #[arg(long)]
        terms: Option<u64>,
    },
    /// Euler's constant from ψ(m+1) or from Re ψ(1+ix).
    Gamma {
        #[arg(long, conflicts_with = "x", required_unless_present = "x")]
        m: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
        #[arg(long, default_value_t = 1e-13)]
        tol: f64,
        #[arg(long)]
        terms: Option<u64>,
    },
    /// ζ(2N+1), optionally through the modular pair (alpha, π²/alpha).
    ZetaOdd {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1e-13)]
        tol: f64,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long)]
        terms: Option<u64>,
    },
    /// Hyperbolic and Lambert sums against their closed forms.
    Identities {
        #[arg(long)]
        terms: Option<u64>,
    },
    /// Run a check suite; exits 2 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Compare term counts and timings with the classical series.
    Bench {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        /// Comma separated tolerances.
        #[arg(long, value_delimiter = ',', default_values_t = bench::DEFAULT_TOLS)]
        tol: Vec<f64>,
    },
}

fn execute(command: Command, settings: &Settings) -> Result<Vec<Report>, CliError> {
    match command {
        Command::Psi { x, tol, method, terms } => {
            commands::psi(x, tol, method, terms, settings).map(|r| vec![r])
        }
        Command::PsiPrime { x, tol, terms } => {
            commands::psi_prime(x, tol, terms, settings).map(|r| vec![r])
        }
        Command::Gamma { m, x, tol, terms } => {
            let mode = match (m, x) {
                (Some(m), _) => GammaMode::Integer(m),
                (None, Some(x)) => GammaMode::AnyX(x),
                (None, None) => return Err(CliError::Input("one of --m or --x is required".into())),
            };
            commands::gamma(mode, tol, terms, settings)
        }
        Command::ZetaOdd { n, tol, alpha, terms } => {
            commands::zeta_odd_cmd(n, tol, alpha, terms).map(|r| vec![r])
        }
        Command::Identities { terms } => commands::identities(terms),
        Command::Verify { suite } => verify::run(suite),
        Command::Bench { x, tol } => bench::bench(x, &tol, settings),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let is_verify = matches!(cli.command, Command::Verify { .. });
    let result = Settings::from_env().and_then(|s| execute(cli.command, &s));
    let reports = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    if let Err(e) = emit(out, &reports, cli.format) {
        let _ = writeln!(err, "error: {e}");
        return EXIT_INPUT;
    }
    if is_verify {
        let failed: Vec<_> = reports.iter().filter(|r| r.passed == Some(false)).collect();
        if !failed.is_empty() {
            for r in &failed {
                let _ = writeln!(
                    err,
                    "FAILED {} (input {}): residual {:e} exceeds {:e}",
                    r.quantity,
                    r.input,
                    r.residual.unwrap_or(f64::NAN),
                    r.allowed.unwrap_or(f64::NAN)
                );
            }
            let e = CliError::Verification(failed.len());
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    }
    EXIT_OK
}
