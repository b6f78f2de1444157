//! The `xrayh` command-line front end: argument handling, CSV input and
//! output, and the commands themselves. Exit codes: 0 success, 1 failed
//! check, 2 usage error, 3 input-data error.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod fieldcsv;
pub mod output;

use std::ffi::OsString;

use clap::Parser;

use crate::args::Cli;
use crate::config::{RunConfig, Task};
use crate::error::CliResult;

/// Runs a validated configuration.
pub fn execute(cfg: &RunConfig) -> CliResult<()> {
    match &cfg.task {
        Task::Selftest { perturb_octagon } => {
            commands::selftest::selftest(cfg, *perturb_octagon).map(drop)
        }
        Task::TransformTable { lambdas } => {
            commands::tables::transform_table(cfg, lambdas).map(drop)
        }
        Task::KernelTable { r_max, r_count } => {
            commands::tables::kernel_table(cfg, *r_max, *r_count).map(drop)
        }
        Task::DiskRecon { field, .. } => commands::recon::disk_recon(cfg, *field).map(drop),
        Task::SurfaceRecon { field, lift } => {
            commands::recon::surface_recon(cfg, *field, *lift).map(drop)
        }
        Task::LimitStudy { field, z_list } => {
            commands::recon::limit_study(cfg, *field, z_list).map(drop)
        }
    }
}

/// Parses `args` (program name first), runs, and returns the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match RunConfig::from_cli(&cli).and_then(|cfg| execute(&cfg)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("xrayh: {e}");
            e.exit_code()
        }
    }
}
