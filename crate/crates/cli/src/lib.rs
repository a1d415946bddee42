//! Command-line front end: configuration files, CSV and SVG reports, and
//! the `intrans` subcommands.

pub mod cli;
pub mod config;
pub mod error;
pub mod manifest;
pub mod report;
pub mod svg;

pub use cli::{cli_dispatch, run, Cli};
pub use error::{CliError, Result};
