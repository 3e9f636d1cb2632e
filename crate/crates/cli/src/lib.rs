//! Command-line front end: graph specs, dispatch to the cheapest decision
//! method, and JSON/CSV/table output.

pub mod commands;
pub mod error;
pub mod graph;
pub mod output;
pub mod spec;

pub use commands::{run, Cli};
pub use error::{CliError, CliResult};
