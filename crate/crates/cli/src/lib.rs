//! Library backing the `dualband-delay` command-line tool: config parsing,
//! experiment presets, CSV rendering, and the subcommand implementations.
//! The binary in `main.rs` is a thin argument-handling shell over this.

pub mod commands;
pub mod config;
pub mod csvout;
pub mod error;
pub mod presets;
