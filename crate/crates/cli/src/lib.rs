//! Library side of the `nlcs` binary: argument definitions, the verify-all
//! suite, subcommand bindings and report rendering.

pub mod commands;
pub mod config;
pub mod output;
pub mod suite;

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const CHECK_FAILURE: i32 = 1;
    pub const USAGE_OR_IO: i32 = 2;
}
