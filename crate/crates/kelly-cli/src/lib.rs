//! Library side of the `kelly` command-line tool: report rendering and the
//! command implementations, separated from argument parsing and I/O so they
//! can be tested directly.

pub mod commands;
pub mod report;
