//! Workspaces, verification suites and compositions behind the `peiffer`
//! command.

pub mod commands;
pub mod workspace;

pub use commands::{Format, Outcome, EXIT_INPUT, EXIT_OK, EXIT_VIOLATIONS};
pub use workspace::{LoadError, Workspace};
