//! Experiments, verification suites and file formats behind the `qfdiv` binary.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod experiments;
pub mod inspect;
pub mod output;
pub mod statefile;
pub mod verify;

pub use config::ExperimentConfig;
pub use error::{CliError, Result};
