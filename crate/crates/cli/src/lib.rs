//! Project files, reports and subcommands of the `qss` tool.

pub mod commands;
pub mod error;
pub mod fixtures;
pub mod project;
pub mod report;

pub use error::CliError;
pub use project::{Project, ProjectFile};
