//! Command-line front end for `vortmetric-core`: classification queries,
//! simulations, `(a, b)` sweeps, self-check suites and the equation catalog,
//! with JSON, CSV and SVG outputs.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod sweep;
pub mod verify;

pub use commands::{run, Cli};
pub use error::CliError;
