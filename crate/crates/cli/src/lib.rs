//! Library side of the `zak` command-line tool: configuration, persistence,
//! plotting, the `verify` self-check and subcommand drivers.

pub mod commands;
pub mod config;
pub mod output;
pub mod plot;
pub mod snapshot;
pub mod verify;
