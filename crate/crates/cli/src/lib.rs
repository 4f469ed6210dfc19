//! Library half of the `mlcap` command: argument parsing, configuration
//! files and the command bodies, kept separate from `main` so tests can drive
//! them in-process.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;

pub use cli::{execute, run, Cli};
pub use error::{CliError, CliResult};
