//! q-Gamma, q-digamma and q-polygamma functions, bounds for ratios of
//! q-Gamma values, and a seeded harness that certifies those bounds
//! numerically.

// `!(a < b)` is used on purpose so NaN inputs fail the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Reference values in tests keep every digit the oracle produced.
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod bounds;
pub mod classical;
pub mod cli;
pub mod error;
pub mod propcheck;
pub mod qcore;
pub mod qspecial;
pub mod report;
pub mod tolerances;

pub use error::{Error, Result};
pub use qcore::{EvalConfig, Evaluation, QParam};
