//! Front end for the `firstint` library: job documents, reports and the
//! reference-session replays behind the `firstint` binary.

pub mod commands;
pub mod error;
pub mod job;
pub mod replay;
pub mod report;
mod text;

pub use error::{exit, CliError, CliResult};
pub use job::{Job, Overrides};
pub use report::Report;
