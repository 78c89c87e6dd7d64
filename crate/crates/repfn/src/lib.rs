//! Scan engine, caches, reports and the `repfn` command line on top of
//! `repfn-core`.

pub mod cache;
pub mod cli;
pub mod config;
pub mod error;
pub mod record;
pub mod report;
pub mod scan;

pub use cli::run_cli;
pub use error::{Error, Result};
pub use record::{ScanRecord, Status};
pub use scan::{run_scan, ScanOptions, ScanReport};
