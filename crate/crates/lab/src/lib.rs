//! Command-line front end, report formats and verification suites for `toroidal-core`.

pub mod cli;
pub mod commands;
pub mod config;
pub mod report;
pub mod suites;

pub use cli::parse_args;
pub use commands::{run, Outcome};
pub use config::RunConfig;
