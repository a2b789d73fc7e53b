//! Simulator and verification toolkit for non-local correlation resources.
//!
//! A PR box is the hypothetical two-party device whose output bits satisfy
//! `a ⊕ b = x·y` for input bits `x`, `y`, with each output locally an
//! unbiased coin. It cannot signal, yet it is more non-local than quantum
//! mechanics: it reaches the algebraic CHSH maximum of 4 where quantum
//! correlations stop at 2√2 and local models at 2.
//!
//! This crate implements, end to end:
//!
//! - the PR box and its exact resource accounting ([`resources`]);
//! - a protocol that reproduces every projective-measurement statistic of
//!   a two-qubit singlet using one PR box and shared randomness, with zero
//!   communication, alongside the Toner–Bacon one-bit protocol and a
//!   local-hidden-variable baseline ([`protocols`]);
//! - exact enumerators and seeded Monte Carlo estimators for the singlet
//!   correlation curve, CHSH values, no-signaling marginals, and the
//!   tripartite "shared PR box" signaling attack ([`analysis`]);
//! - a self-checking verification suite ([`verify`]) and a CLI
//!   (`nlbit`) that emits machine-readable CSV/JSON records ([`cli`]).
//!
//! Every estimate is bit-reproducible from a single 64-bit seed: samples
//! are split into fixed-size chunks, each chunk drawing from its own
//! counter-based random stream, so results are identical for any worker
//! count (see [`exec`]).

pub mod analysis;
pub mod cli;
pub mod core;
mod error;
pub mod exec;
pub mod protocols;
pub mod resources;
pub mod verify;

pub use error::{Error, Result};
