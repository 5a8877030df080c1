//! Batch front end: workspace files, subcommands and their tables.

pub mod commands;
pub mod format;
pub mod selftest;
pub mod workspace;

pub use commands::{parse_group, run_command, Report, COMMANDS};
pub use format::{Config, WorkspaceFile};
pub use selftest::{run_suites, SuiteResult};
pub use workspace::{parse_ring, Object, Workspace};

/// Reads and validates a workspace file.
pub fn parse_workspace(path: &std::path::Path) -> crate::Result<Workspace> {
    Workspace::load(path)
}
