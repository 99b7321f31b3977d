//! `rtxy`: command-line front end.
//!
//! Exit status: 0 success, 1 failed validation or solver failure, 2 bad
//! configuration.

mod commands;
mod config;
mod emit;
mod svg;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, ConfigError, RunConfig, Task};

enum Status {
    Ok,
    ValidationFailed,
}

fn run(config: RunConfig) -> anyhow::Result<Status> {
    let format = config.output.format;
    let (bytes, status) = match &config.task {
        Task::Spectrum { params, sector } => (commands::spectrum(params, *sector, format)?, Status::Ok),
        Task::Phase { sizes, lambda, gamma } => (commands::phase(sizes, *lambda, *gamma, format)?, Status::Ok),
        Task::Kappa { n, j, gammas, lambda, sector } => {
            (commands::kappa(*n, *j, gammas, *lambda, *sector, format)?, Status::Ok)
        }
        Task::Compare { points } => (commands::compare(points, format)?, Status::Ok),
        Task::Validate { criteria } => {
            let (bytes, passed) = commands::validate(criteria, format)?;
            (bytes, if passed { Status::Ok } else { Status::ValidationFailed })
        }
    };
    emit::write_output(config.output.path.as_deref(), &bytes)?;
    Ok(status)
}

fn configure() -> Result<RunConfig, ConfigError> {
    let config = Cli::parse().into_config()?;
    if let Some(threads) = config::thread_cap()? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| ConfigError(format!("thread pool: {e}")))?;
    }
    Ok(config)
}

fn main() -> ExitCode {
    let config = match configure() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("rtxy: {e}");
            return ExitCode::from(2);
        }
    };
    match run(config) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::ValidationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("rtxy: {e:#}");
            let config_error = e.downcast_ref::<rtxy::Error>().is_some_and(|e| {
                matches!(e, rtxy::Error::InvalidParams(_) | rtxy::Error::TooLarge { .. } | rtxy::Error::NotUnbroken { .. })
            });
            ExitCode::from(if config_error { 2 } else { 1 })
        }
    }
}
