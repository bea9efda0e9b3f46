//! Run configuration shared by the binary and the library surface.

use std::path::PathBuf;

use crate::error::{CliError, Result};

/// What the invocation computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Fit and report a coefficient table.
    Fit,
    /// Substitute a regressor by its auxiliary residuals and report both
    /// parametrizations.
    Residualize,
    /// Double-residual (partial regression) coefficient with both standard
    /// errors.
    Fwl,
    /// Variance inflation factors and pairwise correlations only.
    Vif,
    /// Build the term-structure design on the standard maturity grid and
    /// run fit, residualization, and diagnostics in sequence.
    NsDemo,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Fit => "fit",
            Mode::Residualize => "residualize",
            Mode::Fwl => "fwl",
            Mode::Vif => "vif",
            Mode::NsDemo => "ns-demo",
        }
    }
}

/// Output rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
}

/// A validated CLI invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mode: Mode,
    pub input_path: Option<PathBuf>,
    /// Per-month decay of the term-structure loadings.
    pub lambda: f64,
    pub target_column: Option<String>,
    pub output_format: OutputFormat,
    /// Seed for synthetic data generation.
    pub seed: u64,
    /// Generating coefficients for synthetic yields (level, slope,
    /// curvature).
    pub beta: [f64; 3],
    /// Standard deviation of the synthetic yield noise.
    pub noise_sd: f64,
}

impl RunConfig {
    pub fn new(mode: Mode) -> Self {
        Self {
            mode,
            input_path: None,
            lambda: 0.01,
            target_column: None,
            output_format: OutputFormat::Table,
            seed: 0,
            beta: [8.0, -1.5, 15.0],
            noise_sd: 0.0,
        }
    }

    /// Checks the flag combinations the modes require.
    pub fn validate(&self) -> Result<()> {
        match self.mode {
            Mode::Residualize | Mode::Fwl => {
                if self.target_column.is_none() {
                    return Err(CliError::Usage(format!(
                        "--target is required in {} mode",
                        self.mode.as_str()
                    )));
                }
                if self.input_path.is_none() {
                    return Err(CliError::Usage(format!(
                        "--input is required in {} mode",
                        self.mode.as_str()
                    )));
                }
            }
            Mode::Fit | Mode::Vif => {
                if self.input_path.is_none() {
                    return Err(CliError::Usage(format!(
                        "--input is required in {} mode",
                        self.mode.as_str()
                    )));
                }
            }
            Mode::NsDemo => {}
        }
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return Err(CliError::Usage(format!(
                "--lambda must be positive, got {}",
                self.lambda
            )));
        }
        if !(self.noise_sd >= 0.0) || !self.noise_sd.is_finite() {
            return Err(CliError::Usage(format!(
                "--noise-sd must be nonnegative, got {}",
                self.noise_sd
            )));
        }
        Ok(())
    }
}
