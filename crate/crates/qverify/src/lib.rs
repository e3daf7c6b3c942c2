//! Identity verifier for truncated q-series.
//!
//! This crate layers a small expression language and an identity registry on
//! top of [`qseries`]. An identity is a pair of expressions together with a
//! truncation order; verifying it means evaluating both sides as exact
//! q-expansions and comparing every coefficient below the order.
//!
//! The `verify` binary exposes the registry on the command line; see the
//! crate README for the flag reference.

pub mod ast;
pub mod eval;
pub mod parser;
pub mod registry;
pub mod report;
pub mod runner;

pub use registry::{builtin_suite, parse_suite, Identity, SuiteError, DEFAULT_ORDER};
pub use report::{Mismatch, Report, Status};
pub use runner::{run_all, run_one};

// Replay the guide's verifier chapter as doc-tests so the examples stay
// honest.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/verifier.md")]
    pub struct Verifier;
}
