//! Configuration, the solve/build/verify/sweep workflows, and mesh export.

mod commands;
mod config;
mod export;

pub use commands::{cmd_build, cmd_solve, cmd_sweep, cmd_verify, generic_probes, sweep_csv, sweep_rows, Outcome, SweepRow};
pub use config::{GridAxis, RunConfig, DEFAULT_SOLVE_TOL, KEYS};
pub use export::{export_mesh, parse_obj, MeshFormat};

use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("config line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Numerical(#[from] crate::Error),
}

impl CliError {
    /// 2 for usage, parse and file errors, 3 for numerical failures.
    /// (1 is reserved for failed checks, see [`Outcome::exit_code`].)
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Io { .. } => 2,
            CliError::Numerical(_) => 3,
        }
    }
}
