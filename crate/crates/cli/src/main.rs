//! `derham`: exact symbolic de Rham computations with delta-type currents.

mod commands;
mod report;
mod selftest;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use report::{Inputs, EXIT_IO, EXIT_PASS, EXIT_USAGE, EXIT_VERIFICATION};

#[derive(Parser)]
#[command(name = "derham", version, about = "Exact symbolic engine for delta-type currents and simplicial de Rham theory")]
struct Cli {
    /// Write a structured JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

/// Where a current comes from: a file (`-` for standard input) or inline text.
#[derive(Args, Clone)]
pub struct CurrentSource {
    /// File with a current, one term per line.
    #[arg(value_name = "FILE", required_unless_present = "expr")]
    pub file: Option<PathBuf>,
    /// Inline current; `;` separates terms.
    #[arg(long, conflicts_with = "file")]
    pub expr: Option<String>,
    /// Ambient dimension, when the text does not determine it.
    #[arg(long)]
    pub n: Option<usize>,
    /// Complex file resolving `simplex(<id>)` sites.
    #[arg(long, value_name = "FILE")]
    pub complex: Option<PathBuf>,
}

/// A complex given by file or by one of the built-in generators.
#[derive(Args, Clone)]
pub struct ComplexSource {
    /// Complex file (JSON).
    #[arg(long = "complex-file", value_name = "FILE", conflicts_with_all = ["torus", "sphere", "projective_plane"])]
    pub complex_file: Option<PathBuf>,
    /// Flat torus of this dimension.
    #[arg(long, requires = "grid")]
    pub torus: Option<usize>,
    /// Grid size of the torus triangulation.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Boundary of the (n+1)-simplex.
    #[arg(long)]
    pub sphere: Option<usize>,
    /// Six-vertex projective plane.
    #[arg(long)]
    pub projective_plane: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Integral homology of a complex via Smith normal form.
    Homology {
        /// Complex file (JSON).
        file: Option<PathBuf>,
        #[command(flatten)]
        complex: ComplexSource,
    },
    /// Distributional exterior derivative.
    D(CurrentSource),
    /// Interior product with the radial field x_i ∂/∂x_i.
    Contract {
        #[command(flatten)]
        source: CurrentSource,
        /// Coordinate index (1-based).
        #[arg(long)]
        coord: usize,
    },
    /// Check d(D(S_p)) = E(∂S_p) on the model simplex, with Stokes cross-checks.
    #[command(name = "verify-dD")]
    VerifyDd {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
        /// Number of random test forms for the Stokes cross-check.
        #[arg(long, default_value_t = 20)]
        forms: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write u = c·δ(x)dx_1∧…∧dx_n + dv for a closed point-supported current.
    SolvePoint(CurrentSource),
    /// Find v with dv = u for a closed polynomial form on the model simplex.
    SolveInterior(CurrentSource),
    /// Retract a current on the model simplex S_p onto its boundary.
    RetractSimplex {
        #[command(flatten)]
        source: CurrentSource,
        /// Dimension of the model simplex.
        #[arg(long)]
        p: usize,
    },
    /// Retract a closed current on a realized complex onto E(c) + dv.
    GlobalRetract {
        #[command(flatten)]
        source: CurrentSource,
        #[command(flatten)]
        complex: ComplexSource,
    },
    /// De Rham cohomology ranks of a torus next to simplicial Betti numbers.
    DerhamBetti {
        #[arg(long)]
        torus: usize,
        #[arg(long)]
        grid: usize,
    },
    /// Pair a current with a polynomial test form.
    Pair {
        #[command(flatten)]
        source: CurrentSource,
        /// Test form, e.g. "(x1^2) dx{2}; 3 * dx{1}".
        #[arg(long)]
        form: String,
    },
    /// Run the built-in example battery.
    Selftest,
    /// Print a generated complex as JSON.
    Generate {
        #[command(flatten)]
        complex: ComplexSource,
    },
}

/// Failures, each mapped to an exit code.
pub enum Failure {
    Usage(String),
    Io(String),
    Verification(String),
}

impl From<derham::Error> for Failure {
    fn from(e: derham::Error) -> Self {
        use derham::Error::*;
        match e {
            Syntax { .. } | InvalidInput(_) | DimensionMismatch(_) | DanglingSimplex(_) | DegreeMismatch(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Verification(other.to_string()),
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Homology { .. } => "homology",
        Command::D(_) => "d",
        Command::Contract { .. } => "contract",
        Command::VerifyDd { .. } => "verify-dD",
        Command::SolvePoint(_) => "solve-point",
        Command::SolveInterior(_) => "solve-interior",
        Command::RetractSimplex { .. } => "retract-simplex",
        Command::GlobalRetract { .. } => "global-retract",
        Command::DerhamBetti { .. } => "derham-betti",
        Command::Pair { .. } => "pair",
        Command::Selftest => "selftest",
        Command::Generate { .. } => "generate",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { EXIT_PASS as u8 });
        }
    };
    let start = Instant::now();
    let name = command_name(&cli.command);
    let mut inputs = Inputs { args: std::env::args().skip(1).collect(), files: Vec::new() };
    let result = commands::run(&cli.command, &mut inputs);
    let elapsed = start.elapsed().as_millis();
    let (outcome, code) = match result {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            let _ = write!(out, "{}", outcome.text);
            for (check, ok) in &outcome.checks {
                let _ = writeln!(out, "check {check}: {}", if *ok { "pass" } else { "FAIL" });
            }
            let code = if outcome.verified() { EXIT_PASS } else { EXIT_VERIFICATION };
            (outcome, code)
        }
        Err(failure) => {
            let (msg, code) = match failure {
                Failure::Usage(m) => (m, EXIT_USAGE),
                Failure::Io(m) => (m, EXIT_IO),
                Failure::Verification(m) => (m, EXIT_VERIFICATION),
            };
            eprintln!("error: {msg}");
            let mut outcome = report::Outcome::default();
            outcome.output("error", serde_json::Value::String(msg));
            outcome.check("completed", false);
            (outcome, code)
        }
    };
    if let Some(path) = &cli.json {
        let value = report::report(name, &inputs, &outcome, elapsed);
        let text = serde_json::to_string_pretty(&value).expect("serializable report");
        if let Err(e) = std::fs::write(path, text + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_IO as u8);
        }
    }
    ExitCode::from(code as u8)
}
