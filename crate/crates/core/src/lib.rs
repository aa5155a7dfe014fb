//! Maximal `[t, p]`-separate chain decomposition of undirected networks,
//! longest-path lower bounds derived from it, and message relaying by local
//! decisions.
//!
//! The usual pipeline: load a [`graph::Graph`], compute its
//! [`chain::CoreSpectrum`], then evaluate [`bounds`] or run [`relay`]
//! searches against it. [`oracle`] holds brute-force references used by the
//! tests and by `sepchain verify`.

pub mod bench;
pub mod bounds;
pub mod chain;
pub mod cli;
pub mod datasets;
pub mod error;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod relay;
pub mod verify;

pub use error::{Error, Result};
