//! Desk-scale laboratory for entanglement-mediated markets.
//!
//! The crate has two halves that share one quantum core:
//!
//! * a single-commodity exchange ([`market`]) populated by
//!   reinforcement-learning traders ([`agents`]) whose valuations can be
//!   routed through an entangling qubit circuit ([`circuit`]) before
//!   matching, and
//! * a guessing-game analysis toolkit ([`game`], [`nash`]) that computes
//!   utilities, best-response sets, pure-Nash grid scans and mixed-strategy
//!   equilibria for the classical and circuit-mediated two-player games.
//!
//! Everything is deterministic given a seed: random streams are ChaCha
//! streams derived from a run seed (see [`rng`]), and all numeric routines
//! are pure functions over immutable inputs.

pub mod agents;
pub mod circuit;
pub mod game;
pub mod market;
pub mod nash;
pub mod rng;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument fell outside its documented domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configuration failed validation before any work started.
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
