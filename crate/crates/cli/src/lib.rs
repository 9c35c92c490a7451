//! Library side of the `uffsim` command-line tool: scenario configuration,
//! command implementations, and report/CSV plumbing.

pub mod commands;
pub mod report;
pub mod scenario;
