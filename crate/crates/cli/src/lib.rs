//! Command-line front end: argument model, deterministic emission and the
//! reproduction bundle.

pub mod args;
pub mod commands;
pub mod emit;
pub mod error;
pub mod reproduce;

pub use args::Cli;
pub use commands::run;
pub use error::{CliError, CliResult};
