//! File formats, stream ingestion and pipeline commands built on
//! `protest-core`.
//!
//! The `protest` binary wires these into subcommands; every command is also
//! callable as a library function from [`commands`].

pub mod commands;
pub mod comparisons;
pub mod config;
mod error;
pub mod events;
pub mod judgments;
pub mod manifest;
pub mod predictions;
pub mod regions;
pub mod tables;
pub mod tweets;

pub use error::{ToolError, ToolResult};
