//! `mck`: run the projector and multiplicativity suites and the
//! Hilbert-scheme computations from the command line.
//!
//! Exit codes: 0 all checks pass, 1 some check fails, 2 usage or input
//! error, 3 budget exhausted with skipped checks and no failure.

mod compute;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mck_core::report::{Budget, Status};
use mck_core::{Mode, SurfaceModel};

#[derive(Parser)]
#[command(name = "mck", version, about = "Exact checks of Chow-Kunneth projectors on powers of surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Compute invariants, decompositions and normal forms.
    #[command(subcommand)]
    Compute(ComputeCommand),
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Idempotence, orthogonality, completeness, self-duality and graded
    /// traces of the projectors of S^m.
    Projectors {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    /// Vanishing of (π^i ⊗ π^j ⊗ π^k)_* of the small diagonal of S^m.
    Multiplicativity {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        power: usize,
        /// Only evaluate triples i <= j <= k.
        #[arg(long)]
        symmetry_reduce: bool,
    },
}

#[derive(Subcommand)]
enum ComputeCommand {
    /// Betti numbers of S^[n].
    Betti {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Euler characteristic of S^[n].
    Euler {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
    },
    /// The formal decomposition of h(S^[n]).
    Decomposition {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
    },
    /// Bigrading components of a homogeneous class on S^m.
    Bigrading {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: ExprInput,
        #[arg(long)]
        power: Option<usize>,
    },
    /// Normal form of an expression.
    Normalize {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: ExprInput,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum)]
    surface: Option<SurfaceArg>,
    /// Surface model file (TOML, or JSON with a .json extension).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Seconds (`30`, `2.5s`) or a term limit (`5000terms`).
    #[arg(long)]
    budget: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ExprInput {
    #[arg(long)]
    expr: Option<String>,
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SurfaceArg {
    K3,
    Abelian,
    Generic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

/// A failure that is reported with exit code 2.
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

pub type CliResult = Result<Status, UsageError>;

impl Common {
    fn model(&self) -> Result<SurfaceModel, UsageError> {
        let requested = self.surface.map(|s| match s {
            SurfaceArg::K3 => Mode::K3,
            SurfaceArg::Abelian => Mode::Abelian,
            SurfaceArg::Generic => Mode::GenericB1Zero,
        });
        let model = match &self.config {
            Some(path) => SurfaceModel::from_config_file(path)?,
            None => match requested.unwrap_or(Mode::K3) {
                Mode::K3 => SurfaceModel::k3(),
                Mode::Abelian => SurfaceModel::abelian(),
                Mode::GenericB1Zero => {
                    return Err(UsageError(
                        "a generic surface needs --config with chi_top, k2 and gram".into(),
                    ))
                }
            },
        };
        if let Some(mode) = requested {
            if mode != model.mode() {
                return Err(UsageError(format!(
                    "--surface {} conflicts with the {} model in the config file",
                    mode,
                    model.mode()
                )));
            }
        }
        Ok(model)
    }

    fn budget(&self) -> Result<Budget, UsageError> {
        Ok(match &self.budget {
            Some(b) => Budget::parse(b)?,
            None => Budget::unlimited(),
        })
    }
}

impl ExprInput {
    fn text(&self) -> Result<String, UsageError> {
        match (&self.expr, &self.file) {
            (Some(e), _) => Ok(e.clone()),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map_err(|e| UsageError(format!("{}: {e}", path.display()))),
            (None, None) => Err(UsageError("an expression is required".into())),
        }
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Verify(VerifyCommand::Projectors { common, power }) => {
            verify::projectors(&common.model()?, power, common.budget()?, common.format)
        }
        Command::Verify(VerifyCommand::Multiplicativity {
            common,
            power,
            symmetry_reduce,
        }) => verify::multiplicativity(
            &common.model()?,
            power,
            symmetry_reduce,
            common.budget()?,
            common.format,
        ),
        Command::Compute(ComputeCommand::Betti { common, n, degree }) => {
            compute::betti(&common.model()?, n, degree, common.format)
        }
        Command::Compute(ComputeCommand::Euler { common, n }) => {
            compute::euler(&common.model()?, n, common.format)
        }
        Command::Compute(ComputeCommand::Decomposition { common, n }) => {
            compute::decomposition(&common.model()?, n, common.format)
        }
        Command::Compute(ComputeCommand::Bigrading {
            common,
            input,
            power,
        }) => compute::bigrading(&common.model()?, &input.text()?, power, common.format),
        Command::Compute(ComputeCommand::Normalize { common, input }) => {
            compute::normalize(&common.model()?, &input.text()?, common.format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Ok(Status::Skipped) => ExitCode::from(3),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
