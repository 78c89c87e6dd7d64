use std::path::PathBuf;

use clap::ValueEnum;
use repfn_core::UniverseCap;

use crate::error::{Error, Result};

/// Environment variable that overrides the default worker count.
pub const JOBS_ENV: &str = "REPFN_JOBS";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Csv,
    Jsonl,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub universe_cap: UniverseCap,
    pub jobs: usize,
    pub output_format: OutputFormat,
    pub cache_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            universe_cap: UniverseCap::DEFAULT,
            jobs: 1,
            output_format: OutputFormat::Table,
            cache_path: None,
        }
    }
}

/// Worker count from the flag, else `REPFN_JOBS`, else the machine's parallelism.
pub fn resolve_jobs(flag: Option<usize>) -> Result<usize> {
    let jobs = match flag {
        Some(n) => n,
        None => match std::env::var(JOBS_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("{JOBS_ENV}={v:?} is not a worker count")))?,
            Err(_) => std::thread::available_parallelism().map_or(1, |n| n.get()),
        },
    };
    if jobs == 0 {
        return Err(Error::Usage("--jobs must be at least 1".into()));
    }
    Ok(jobs)
}
