//! Target functions, experiment runners, CSV output and the command line.
//!
//! Kernel specification strings are described in [`kernel_arg`].

pub mod cli;
pub mod config;
pub mod csv_out;
pub mod experiments;
pub mod kernel_arg;
pub mod targets;

pub use cli::cli_main;
pub use config::{Experiment, ExperimentConfig, RhoRule};
pub use csv_out::{read_csv, write_csv, write_rows, CSV_HEADER};
pub use experiments::{
    fill_rates, quadrature_for, run_coeffs, run_convergence, run_noise, run_quadcheck, run_timing, trial_rng, ResultRow,
};
pub use kernel_arg::parse_kernel_spec;
pub use targets::{f2_centers, target_f1, target_f2, target_f3, target_wendland6, wendland_phi3, Target, TargetKind};
