//! Table files, CSV/JSON reports and the subcommands behind the `hgcount`
//! binary.

pub mod args;
pub mod commands;
pub mod report;
pub mod table;

pub use args::Cli;
pub use commands::{run, UsageError};
