//! Support library for the `casimir` binary: run records, CSV emission
//! and the TOML configuration.

pub mod config;
pub mod record;
