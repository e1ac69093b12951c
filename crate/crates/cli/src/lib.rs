//! Library half of the `qarch` command: configuration, sweeps, report
//! writers and the verification checks.

pub mod checks;
pub mod commands;
pub mod config;
pub mod error;

pub use error::{CliError, CliResult};
