//! Command-line front end for the ball-family toolkit.
//!
//! The binary is a thin wrapper over this library so the argument parsing,
//! configuration layering, and JSON schema checking stay testable. Every
//! subcommand builds its whole output in memory first and then writes it to
//! stdout or to the `--out` file, which keeps repeated runs byte-identical.

pub mod commands;
pub mod config;
pub mod render;
pub mod schema;

pub use commands::{run, Cli, Outcome};
