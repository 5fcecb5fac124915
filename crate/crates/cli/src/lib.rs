//! Command-line front end for `timetrap`: configuration, tables and plots.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod plot;

pub use commands::{Options, Outcome};
pub use error::CliError;
