//! Batch driver behind the `transmute-lab` executable.

pub mod commands;
pub mod config;
pub mod grid;
pub mod table;

use std::fs;

use config::{Format, ScanConfig};
use thiserror::Error;

pub const THREADS_ENV: &str = "TRANSMUTE_LAB_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(_) | CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl From<transmute_lab::Error> for CliError {
    fn from(e: transmute_lab::Error) -> Self {
        match e {
            transmute_lab::Error::Domain(_) | transmute_lab::Error::UnsupportedRegulator(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

/// Worker count from the environment; `None` means rayon's default.
pub fn thread_cap() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) => Ok(None),
            Ok(n) => Ok(Some(n)),
            Err(_) => Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a count, got `{v}`"
            ))),
        },
    }
}

/// Runs one command on a dedicated pool and returns the rendered table.
pub fn render(cfg: &ScanConfig, threads: Option<usize>) -> Result<String, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Numerical(format!("worker pool: {e}")))?;
    let table = pool.install(|| commands::run(cfg))?;
    Ok(match cfg.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    })
}

/// Renders and writes to `--out` or stdout. Nothing is written on failure.
pub fn execute(cfg: &ScanConfig) -> Result<(), CliError> {
    let text = render(cfg, thread_cap()?)?;
    match &cfg.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
