//! Verification suites and command-line front end for `cliffgauge`.

pub mod commands;
pub mod config;
pub mod report;
pub mod seed;
pub mod suites;

pub use commands::{run, Cli};
pub use suites::{run_group, run_suite, Options, Suite};
