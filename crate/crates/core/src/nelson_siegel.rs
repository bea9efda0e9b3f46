//! Nelson-Siegel factor loadings for a maturity grid and decay parameter.
//!
//! The zero rate at maturity `tau` (months) is modelled as
//!
//! ```text
//! y(tau) = b1 + b2 * L2(tau) + b3 * L3(tau)
//! L2(tau) = (1 - exp(-lambda tau)) / (lambda tau)
//! L3(tau) = L2(tau) - exp(-lambda tau)
//! ```
//!
//! with `lambda` the per-month decay. `b1` weighs the long-term (level)
//! component whose loading is constant 1, `b2` the short-term (slope)
//! component, and `b3` the medium-term (curvature) component. In the
//! regression design the long-term loading is the intercept, so the
//! constant-column invariant of [`RegressionData`] holds.
//!
//! For `lambda * tau` below [`SERIES_THRESHOLD`] the slope loading is
//! evaluated by its series expansion `1 - x/2 + x^2/6` to avoid
//! cancellation in `1 - exp(-x)`.

use crate::data::RegressionData;
use crate::error::{Error, Result};

/// Name of the short-term (slope) loading column in generated designs.
pub const SHORT_TERM_COLUMN: &str = "short_term";
/// Name of the medium-term (curvature) loading column in generated designs.
pub const MEDIUM_TERM_COLUMN: &str = "medium_term";

/// The fixed-maturity grid (in months) commonly used for end-of-month
/// treasury yield panels: 3m to 120m.
pub const DEFAULT_MATURITY_GRID_MONTHS: [f64; 17] = [
    3.0, 6.0, 9.0, 12.0, 15.0, 18.0, 21.0, 24.0, 30.0, 36.0, 48.0, 60.0, 72.0, 84.0, 96.0, 108.0,
    120.0,
];

/// Below this value of `lambda * tau` the slope loading switches to its
/// series expansion; keeps the relative error under 1e-12.
pub const SERIES_THRESHOLD: f64 = 1e-4;

/// Loading matrix of the three-factor term-structure model on a maturity
/// grid.
#[derive(Debug, Clone, PartialEq)]
pub struct NsLoadingSet {
    /// Maturities in months, all positive.
    pub maturities: Vec<f64>,
    /// Per-month decay parameter, positive.
    pub lambda: f64,
    /// Level loading: a vector of ones.
    pub long_term: Vec<f64>,
    /// Slope loading `L2`, in (0, 1) and strictly decreasing in maturity.
    pub short_term: Vec<f64>,
    /// Curvature loading `L3`, positive with a single interior maximum.
    pub medium_term: Vec<f64>,
}

/// Slope loading `L2(x) = (1 - exp(-x)) / x` for `x = lambda * tau`.
pub fn short_term_loading(lambda: f64, tau: f64) -> f64 {
    let x = lambda * tau;
    if x < SERIES_THRESHOLD {
        1.0 - x / 2.0 + x * x / 6.0
    } else {
        -(-x).exp_m1() / x
    }
}

/// Curvature loading `L3(x) = L2(x) - exp(-x)` for `x = lambda * tau`.
pub fn medium_term_loading(lambda: f64, tau: f64) -> f64 {
    short_term_loading(lambda, tau) - (-lambda * tau).exp()
}

/// Evaluates the loading set on a maturity grid.
pub fn ns_loadings(maturities: &[f64], lambda: f64) -> Result<NsLoadingSet> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::NonPositiveInput {
            what: "lambda".to_string(),
            value: lambda,
        });
    }
    if maturities.is_empty() {
        return Err(Error::EmptyData);
    }
    for &tau in maturities {
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(Error::NonPositiveInput {
                what: "maturity".to_string(),
                value: tau,
            });
        }
    }
    Ok(NsLoadingSet {
        maturities: maturities.to_vec(),
        lambda,
        long_term: vec![1.0; maturities.len()],
        short_term: maturities
            .iter()
            .map(|&tau| short_term_loading(lambda, tau))
            .collect(),
        medium_term: maturities
            .iter()
            .map(|&tau| medium_term_loading(lambda, tau))
            .collect(),
    })
}

/// Builds the regression dataset of the term-structure model: the yields
/// are the response, the short- and medium-term loadings are the
/// regressors, and the long-term loading is the intercept.
pub fn ns_design(maturities: &[f64], lambda: f64, yields: &[f64]) -> Result<RegressionData> {
    if yields.len() != maturities.len() {
        return Err(Error::DimensionMismatch {
            what: "yields".to_string(),
            expected: maturities.len(),
            got: yields.len(),
        });
    }
    let loadings = ns_loadings(maturities, lambda)?;
    RegressionData::new(
        yields.to_vec(),
        vec![
            (SHORT_TERM_COLUMN.to_string(), loadings.short_term),
            (MEDIUM_TERM_COLUMN.to_string(), loadings.medium_term),
        ],
        true,
    )
}
