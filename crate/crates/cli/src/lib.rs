//! Library side of the `varwreath` command-line tool: input parsing, report
//! types, the command implementations, and the fixture runner. The binary in
//! `main.rs` is a thin clap wrapper over this.

pub mod commands;
pub mod fixtures;
pub mod fuzz;
pub mod inputs;
pub mod reports;

pub use commands::{CliError, Limits};
pub use reports::Report;
