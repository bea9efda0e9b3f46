//! Near-multicollinearity diagnostics and the marginal-effect distortion it
//! causes.
//!
//! The variance inflation factor of a regressor is
//!
//! ```text
//! VIF_j = 1 / (1 - R2_j)
//! ```
//!
//! where `R2_j` is the coefficient of determination of the auxiliary
//! regression of column j on all remaining regressors plus an intercept.
//! Both common alert thresholds are reported: 10 and the stricter 4.
//!
//! When regressors co-move, the total (empirical) effect of a regressor on
//! the response is its own coefficient plus the co-movement it drags along:
//!
//! ```text
//! d y / d X_i = beta_i + sum_h beta_h * slope(X_h on X_i)
//! ```
//!
//! with the pairwise OLS slope standing in for the symbolic `dX_h/dX_i`.

use crate::data::RegressionData;
use crate::error::{Error, Result};
use crate::ols::{fit_ols, OlsFit};

/// Looser conventional VIF alert threshold.
pub const VIF_THRESHOLD_LOOSE: f64 = 10.0;
/// Stricter conventional VIF alert threshold.
pub const VIF_THRESHOLD_STRICT: f64 = 4.0;

/// Auxiliary R-squared at or beyond which the VIF is treated as unbounded.
const PERFECT_R2: f64 = 1.0 - 1e-12;

/// Variance inflation factor of one regressor.
#[derive(Debug, Clone, PartialEq)]
pub struct VifEntry {
    pub column_name: String,
    /// R-squared of the auxiliary regression of this column on the others.
    pub r2_aux: f64,
    /// `1 / (1 - r2_aux)`.
    pub vif: f64,
    /// `vif > 10`.
    pub exceeds_loose: bool,
    /// `vif > 4`.
    pub exceeds_strict: bool,
}

/// VIF diagnostics for every regressor column of a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct VifReport {
    pub entries: Vec<VifEntry>,
}

impl VifReport {
    pub fn entry(&self, column: &str) -> Option<&VifEntry> {
        self.entries.iter().find(|e| e.column_name == column)
    }

    pub fn max_vif(&self) -> f64 {
        self.entries.iter().map(|e| e.vif).fold(f64::MIN, f64::max)
    }
}

/// Total empirical effect of a regressor on the response, decomposed into
/// the ceteris-paribus coefficient and the co-movement contributions of the
/// other regressors.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalEffectReport {
    pub target_column: String,
    /// The target's own coefficient.
    pub ceteris_paribus_effect: f64,
    /// Pairwise OLS slope of each other regressor on the target.
    pub cross_slopes: Vec<(String, f64)>,
    /// `ceteris_paribus_effect + sum(beta_h * slope_h)`.
    pub total_effect: f64,
}

/// Auxiliary R-squared and variance inflation factor of one column:
/// the column is regressed on all remaining regressors plus an intercept.
pub fn vif(data: &RegressionData, column: &str) -> Result<(f64, f64)> {
    let others: Vec<&str> = data
        .column_names()
        .into_iter()
        .filter(|&c| c != column)
        .collect();
    if !data.has_column(column) {
        return Err(Error::ColumnNotFound(column.to_string()));
    }
    let aux = data.auxiliary_data(column, &others)?;
    let fit = fit_ols(&aux)?;
    let r2_aux = fit.r_squared;
    if r2_aux >= PERFECT_R2 {
        return Err(Error::PerfectCollinearity {
            column: column.to_string(),
            r2_aux,
        });
    }
    Ok((r2_aux, (1.0 / (1.0 - r2_aux)).max(1.0)))
}

/// Computes [`vif`] for every regressor column. Requires at least two
/// regressors; per-column failures are annotated with the column name.
pub fn vif_report(data: &RegressionData) -> Result<VifReport> {
    let names = data.column_names();
    if names.len() < 2 {
        return Err(Error::TooFewColumns {
            needed: 2,
            got: names.len(),
        });
    }
    let mut entries = Vec::with_capacity(names.len());
    for name in names {
        let (r2_aux, v) = vif(data, name).map_err(|e| match e {
            already @ Error::Vif { .. } => already,
            other => Error::Vif {
                column: name.to_string(),
                source: Box::new(other),
            },
        })?;
        entries.push(VifEntry {
            column_name: name.to_string(),
            r2_aux,
            vif: v,
            exceeds_loose: v > VIF_THRESHOLD_LOOSE,
            exceeds_strict: v > VIF_THRESHOLD_STRICT,
        });
    }
    Ok(VifReport { entries })
}

/// Pearson product-moment correlation of two equal-length vectors.
pub fn correlation(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            what: "correlation inputs".to_string(),
            expected: x.len(),
            got: y.len(),
        });
    }
    let n = x.len();
    if n < 2 {
        return Err(Error::ZeroVariance("correlation input".to_string()));
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let mx = mean(x);
    let my = mean(y);
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for i in 0..n {
        let dx = x[i] - mx;
        let dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance("correlation input".to_string()));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// Decomposes the total empirical effect of `target` on the response under
/// the fitted model, estimating each `dX_h/dX_target` as the pairwise OLS
/// slope of `X_h` on the target.
pub fn marginal_effects(
    fit: &OlsFit,
    data: &RegressionData,
    target: &str,
) -> Result<MarginalEffectReport> {
    if fit.coefficient_names != data.coefficient_names() {
        return Err(Error::DimensionMismatch {
            what: "fit coefficients vs. data columns".to_string(),
            expected: data.num_coefficients(),
            got: fit.num_coefficients(),
        });
    }
    let target_values = data.column(target)?;
    let beta_target = fit.coefficient(target)?;

    let mut cross_slopes = Vec::new();
    let mut total = beta_target;
    for col in data.columns() {
        if col.name == target {
            continue;
        }
        let slope = pairwise_slope(&col.values, target_values, &col.name)?;
        total += fit.coefficient(&col.name)? * slope;
        cross_slopes.push((col.name.clone(), slope));
    }

    Ok(MarginalEffectReport {
        target_column: target.to_string(),
        ceteris_paribus_effect: beta_target,
        cross_slopes,
        total_effect: total,
    })
}

/// OLS slope of the simple regression of `y` on `x` with intercept:
/// centered cross-moment over the centered second moment of `x`.
fn pairwise_slope(y: &[f64], x: &[f64], y_name: &str) -> Result<f64> {
    debug_assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for i in 0..x.len() {
        let dx = x[i] - mx;
        sxy += dx * (y[i] - my);
        sxx += dx * dx;
    }
    if sxx == 0.0 {
        return Err(Error::ZeroVariance(format!(
            "regressor in the slope of `{y_name}`"
        )));
    }
    Ok(sxy / sxx)
}
