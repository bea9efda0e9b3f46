//! Least-squares regression for multicollinear designs.
//!
//! The crate bundles the pieces needed to estimate, diagnose, and repair
//! linear models whose regressors co-move:
//!
//! - [`ols`] — QR-based ordinary least squares with standard errors,
//!   t statistics, and Student-t p-values;
//! - [`collinearity`] — variance inflation factors, correlations, and the
//!   decomposition of total marginal effects under co-moving regressors;
//! - [`residualize`] — substitution of a regressor by its
//!   auxiliary-regression residuals, with exact coefficient-identity
//!   guarantees and the recovery map back to the original parameters;
//! - [`fwl`] — the double-residual (partial) regression and its equivalence
//!   with the direct coefficient;
//! - [`nelson_siegel`] — three-factor term-structure loadings, a standard
//!   source of highly collinear designs.
//!
//! # Example
//!
//! ```
//! use residlm_core::{fit_ols, ns_design, residualize, vif_report};
//! use residlm_core::nelson_siegel::DEFAULT_MATURITY_GRID_MONTHS;
//!
//! // A strongly collinear term-structure design (decay 0.01 per month).
//! let grid = DEFAULT_MATURITY_GRID_MONTHS;
//! let yields: Vec<f64> = grid.iter().map(|&t| 5.0 + 0.01 * t).collect();
//! let data = ns_design(&grid, 0.01, &yields)?;
//!
//! let fit = fit_ols(&data)?;
//! let vifs = vif_report(&data)?;
//! assert!(vifs.max_vif() > 10.0);
//!
//! // Replace the medium-term loading by its residual part; the medium-term
//! // coefficient and the fit quality are unchanged.
//! let model = residualize(&data, "medium_term")?;
//! assert!((model.fit.r_squared - fit.r_squared).abs() < 1e-10);
//! # Ok::<(), residlm_core::Error>(())
//! ```

pub mod collinearity;
pub mod data;
pub mod error;
pub mod fwl;
pub mod nelson_siegel;
pub mod ols;
pub mod residualize;

pub use collinearity::{
    correlation, marginal_effects, vif, vif_report, MarginalEffectReport, VifEntry, VifReport,
};
pub use data::{Column, RegressionData, INTERCEPT_NAME};
pub use error::{Error, Result};
pub use fwl::{fwl_coefficient, FwlResult};
pub use nelson_siegel::{ns_design, ns_loadings, NsLoadingSet};
pub use ols::{fit_ols, p_value_two_sided, r_squared_of, OlsFit, SignificanceLevel};
pub use residualize::{
    fit_auxiliary, recover_original, residualize, AuxiliaryFit, ResidualizedModel,
    RESIDUAL_SUFFIX,
};
