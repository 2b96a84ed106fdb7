//! Command-line companion to the core library: the automaton file format,
//! analysis and sweep reports, DOT renderings, and the named verification
//! suites the binary exposes.

pub mod analyze;
pub mod dot;
pub mod format;
pub mod report;
pub mod sweep;
pub mod verify;
