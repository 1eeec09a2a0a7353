use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};

use super::config::{Experiment, ExperimentConfig};
use super::csv_out::{write_csv, write_rows};
use super::experiments::{run_coeffs, run_convergence, run_noise, run_quadcheck, run_timing, ResultRow};

#[derive(Parser, Debug)]
#[command(name = "sphqi", version, about = "Quasi-interpolation experiments on the unit sphere")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Discrete L2 error and observed rate of the quasi-interpolant for each n
    Converge(Flags),
    /// RMSE under Gaussian sample noise, quasi-interpolant vs hyperinterpolation
    Noise(Flags),
    /// Build-and-evaluate wall time, quasi-interpolant vs hyperinterpolation
    Timing(Flags),
    /// Fourier-Legendre coefficients 0..=max(n) of a kernel at its own scale
    Coeffs(Flags),
    /// Exactness residual of the product rule of each order n (or of --md-nodes)
    Quadcheck(Flags),
}

#[derive(Args, Debug, Default)]
struct Flags {
    /// key=value file with defaults for any of the flags below
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Kernel specification, e.g. gaussian:rho=0.1, cs:m=2, ho:base=gaussian,K=3
    #[arg(long)]
    kernel: Option<String>,
    /// Target function: f1, f2, f3, wendland6
    #[arg(long)]
    target: Option<String>,
    /// Comma-separated degrees, e.g. 10,20,40
    #[arg(long)]
    n: Option<String>,
    /// c in rho = c * n^exponent
    #[arg(long = "rho-c")]
    rho_c: Option<String>,
    /// exponent in rho = c * n^exponent (default -0.5)
    #[arg(long = "rho-exp", allow_hyphen_values = true)]
    rho_exp: Option<String>,
    /// Keep the kernel's own rho for every n
    #[arg(long = "rho-fixed")]
    rho_fixed: bool,
    /// Comma-separated noise levels
    #[arg(long)]
    noise: Option<String>,
    /// Noise trials per level (default 30)
    #[arg(long)]
    trials: Option<String>,
    /// Master seed (default 42)
    #[arg(long)]
    seed: Option<String>,
    /// Node file `x y z w`; `{n}` in the path is replaced by the degree
    #[arg(long = "md-nodes", value_name = "PATH")]
    md_nodes: Option<String>,
    /// Order of the evaluation rule (default 2 * max(n))
    #[arg(long = "eval-order")]
    eval_order: Option<String>,
    /// Output CSV path (default: stdout)
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
}

fn build_config(experiment: Experiment, flags: &Flags) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::new(experiment);
    if let Some(path) = &flags.config {
        cfg.apply_file(path)?;
    }
    let pairs = [
        ("kernel", &flags.kernel),
        ("target", &flags.target),
        ("n", &flags.n),
        ("rho-c", &flags.rho_c),
        ("rho-exp", &flags.rho_exp),
        ("noise", &flags.noise),
        ("trials", &flags.trials),
        ("seed", &flags.seed),
        ("md-nodes", &flags.md_nodes),
        ("eval-order", &flags.eval_order),
        ("out", &flags.out),
    ];
    for (key, value) in pairs {
        if let Some(v) = value {
            cfg.apply(key, v)?;
        }
    }
    if flags.rho_fixed {
        cfg.apply("rho-fixed", "true")?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(cfg: &ExperimentConfig, rows: &[ResultRow]) -> Result<()> {
    match &cfg.out {
        Some(path) => write_csv(rows, path),
        None => write_rows(rows, io::stdout().lock()),
    }
}

fn run(command: Command) -> Result<()> {
    let (experiment, flags) = match command {
        Command::Converge(f) => (Experiment::Converge, f),
        Command::Noise(f) => (Experiment::Noise, f),
        Command::Timing(f) => (Experiment::Timing, f),
        Command::Coeffs(f) => (Experiment::Coeffs, f),
        Command::Quadcheck(f) => (Experiment::Quadcheck, f),
    };
    let cfg = build_config(experiment, &flags)?;
    match experiment {
        Experiment::Converge => emit(&cfg, &run_convergence(&cfg)?),
        Experiment::Noise => {
            if cfg.md_path.is_none() {
                eprintln!(
                    "note: product rules of order 2n stand in for node sets of size (n+1)^2; see the nodes column"
                );
            }
            emit(&cfg, &run_noise(&cfg)?)
        }
        Experiment::Timing => emit(&cfg, &run_timing(&cfg)?),
        Experiment::Quadcheck => {
            let rows = run_quadcheck(&cfg)?;
            for r in &rows {
                println!("order={} nodes={} residual={:.3e}", r.n, r.nodes, r.error);
            }
            if let Some(path) = &cfg.out {
                write_csv(&rows, path)?;
            }
            Ok(())
        }
        Experiment::Coeffs => {
            let coeffs = run_coeffs(&cfg, cfg.max_n())?;
            let mut text = String::from("ell,flc\n");
            for (l, v) in coeffs {
                text.push_str(&format!("{l},{v:.15e}\n"));
            }
            match &cfg.out {
                Some(path) => std::fs::write(path, text)?,
                None => io::stdout().lock().write_all(text.as_bytes())?,
            }
            Ok(())
        }
    }
}

/// Runs the command line `argv` (program name first) and returns the exit
/// code: 0 on success, 1 for usage or configuration errors, 2 when a
/// numeric failure such as a NaN is detected.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Numeric(_) => 2,
                _ => 1,
            }
        }
    }
}
