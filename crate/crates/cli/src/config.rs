use std::path::PathBuf;

use crate::error::{CliError, Result};

pub const DEFAULT_OUT_DIR: &str = "qfdiv-out";

/// Shared experiment parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub lambda: f64,
    pub chi2_0_list: Vec<f64>,
    pub quad_tol: f64,
    pub state_tol: f64,
    pub out_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            dim: 4,
            samples: 10_000,
            seed: 42,
            lambda: 0.1,
            chi2_0_list: vec![1.0, 4.0, 16.0],
            quad_tol: 1e-8,
            state_tol: 1e-9,
            out_dir: PathBuf::from(DEFAULT_OUT_DIR),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples < 1 {
            return Err(CliError::Config("samples must be at least 1".into()));
        }
        if self.dim < 2 {
            return Err(CliError::Config("dim must be at least 2".into()));
        }
        if !(self.quad_tol > 0.0) || !(self.state_tol > 0.0) {
            return Err(CliError::Config("tolerances must be positive".into()));
        }
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return Err(CliError::Config("lambda must be positive".into()));
        }
        if self.chi2_0_list.is_empty() || self.chi2_0_list.iter().any(|c| !(*c >= 0.0)) {
            return Err(CliError::Config("chi2_0 values must be non-negative".into()));
        }
        Ok(())
    }
}
