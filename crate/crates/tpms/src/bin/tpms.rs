//! tpms solve|build|verify|sweep [--config FILE] [--<key> VALUE ...]

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use tpms::cli::{cmd_build, cmd_solve, cmd_sweep, cmd_verify, CliError, Outcome, RunConfig};

#[derive(Parser)]
#[command(name = "tpms", version, about = "Period problems, meshes and checks for the C2, L2 and L4 minimal surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find the period-closing parameter on a slice.
    Solve(Flags),
    /// Write the fundamental domain, piece and a tiled block as OBJ.
    Build(Flags),
    /// Run every check; exits 1 if any fails.
    Verify(Flags),
    /// Tabulate the period residual over a grid.
    Sweep(Flags),
}

/// Every config key as a flag; flags override the config file.
#[derive(Args)]
struct Flags {
    /// `key = value` file; see RunConfig for the keys.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long = "x_re", allow_hyphen_values = true)]
    x_re: Option<String>,
    #[arg(long = "x_im", allow_hyphen_values = true)]
    x_im: Option<String>,
    #[arg(long = "slice_fixed")]
    slice_fixed: Option<String>,
    #[arg(long = "slice_value", allow_hyphen_values = true)]
    slice_value: Option<String>,
    #[arg(long = "slice_lo", allow_hyphen_values = true)]
    slice_lo: Option<String>,
    #[arg(long = "slice_hi", allow_hyphen_values = true)]
    slice_hi: Option<String>,
    #[arg(long = "slice_samples")]
    slice_samples: Option<String>,
    #[arg(long)]
    resolution: Option<String>,
    /// Three counts, e.g. "1 1 2".
    #[arg(long)]
    tiles: Option<String>,
    #[arg(long)]
    probes: Option<String>,
    #[arg(long = "loci_samples")]
    loci_samples: Option<String>,
    /// "lo hi n".
    #[arg(long = "sweep_re", allow_hyphen_values = true)]
    sweep_re: Option<String>,
    /// "lo hi n".
    #[arg(long = "sweep_im", allow_hyphen_values = true)]
    sweep_im: Option<String>,
    #[arg(long)]
    output: Option<String>,
    /// NAME=VALUE, as the `tol.NAME` config key; repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    tol: Vec<String>,
}

impl Flags {
    fn config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::parse(&std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.clone(), source })?)?,
            None => RunConfig::default(),
        };
        let pairs = [
            ("family", &self.family),
            ("x_re", &self.x_re),
            ("x_im", &self.x_im),
            ("slice_fixed", &self.slice_fixed),
            ("slice_value", &self.slice_value),
            ("slice_lo", &self.slice_lo),
            ("slice_hi", &self.slice_hi),
            ("slice_samples", &self.slice_samples),
            ("resolution", &self.resolution),
            ("tiles", &self.tiles),
            ("probes", &self.probes),
            ("loci_samples", &self.loci_samples),
            ("sweep_re", &self.sweep_re),
            ("sweep_im", &self.sweep_im),
            ("output", &self.output),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                cfg.set(key, v.trim()).map_err(|m| CliError::Usage(format!("--{key}: {m}")))?;
            }
        }
        for t in &self.tol {
            let (name, v) = t.split_once('=').ok_or_else(|| CliError::Usage(format!("--tol expects NAME=VALUE, got '{t}'")))?;
            cfg.set(&format!("tol.{}", name.trim()), v.trim()).map_err(|m| CliError::Usage(format!("--tol: {m}")))?;
        }
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Solve(f) => cmd_solve(&f.config()?),
        Command::Build(f) => cmd_build(&f.config()?),
        Command::Verify(f) => cmd_verify(&f.config()?),
        Command::Sweep(f) => cmd_sweep(&f.config()?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            print!("{}", outcome.summary);
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
