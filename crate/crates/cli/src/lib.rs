//! Command-line front end: the expression language, group action specs,
//! and the subcommands.

pub mod commands;
pub mod expr;
pub mod spec;

pub use commands::{run, Cli, CliError, Command, Emission, Format};
