//! Pure algorithms behind the protest image analysis toolkit.
//!
//! Everything in this crate works on in-memory values and allocates through
//! `alloc` only, so it builds for `no_std` targets. File formats, stream
//! ingestion and the command-line front end live in `protest-tools`.
//!
//! Module map:
//!
//! - [`annotation`]: crowd judgment consensus, sentiment pooling, split-half reliability
//! - [`ranking`]: balanced pair designs and Bradley-Terry fitting
//! - [`stats`]: ROC/AUC, Pearson correlation with exact p-values, correlation matrices
//! - [`active`]: recall-constrained threshold selection and candidate pruning
//! - [`geo`]: region assignment, event filters, per-region rates, distribution summaries
//! - [`text`]: lexicon-based text valence and image/text correlation
//! - [`scores`]: the prediction interchange record and its row grammar
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod active;
pub mod annotation;
mod error;
pub mod geo;
pub mod ranking;
pub mod scores;
pub mod stats;
pub mod text;

pub use error::{Error, Result};
