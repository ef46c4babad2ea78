//! Command line interface, workspace file format and chart rendering for
//! the comodule engine in `cotor-core`.

pub mod chart;
pub mod commands;
pub mod format;

pub use commands::run_cli;
