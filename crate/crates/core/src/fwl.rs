//! Frisch-Waugh-Lovell double-residual regression.
//!
//! The response and the target regressor are each regressed on the control
//! columns (plus intercept); the slope of the response residuals on the
//! target residuals then equals the target's coefficient in the full
//! multiple regression. The residual-on-residual fit keeps its own
//! intercept, whose estimate is zero because both residual series are
//! mean-zero.
//!
//! The slope coincides with the full-model coefficient, but its standard
//! error does not: the two-variable fit uses `n - 2` residual degrees of
//! freedom where the full model uses `n - p`. Both are exposed so reports
//! can show them side by side.

use crate::data::RegressionData;
use crate::error::{Error, Result};
use crate::ols::{fit_ols, OlsFit};
use crate::residualize::RESIDUAL_SUFFIX;

/// Result of partialling the controls out of both the response and the
/// target, then regressing residuals on residuals.
#[derive(Debug, Clone)]
pub struct FwlResult {
    pub target_column: String,
    pub control_columns: Vec<String>,
    /// Residuals of the response on the controls.
    pub ey: Vec<f64>,
    /// Residuals of the target on the controls.
    pub ej: Vec<f64>,
    /// Regression of `ey` on `ej` with intercept.
    pub gamma_fit: OlsFit,
    /// Slope of that regression; equals the full-model coefficient of the
    /// target.
    pub gamma_hat: f64,
}

impl FwlResult {
    /// Intercept of the residual-on-residual regression (zero up to
    /// rounding).
    pub fn gamma_intercept(&self) -> f64 {
        self.gamma_fit.coefficients[0]
    }

    /// Standard error of the slope under the two-variable fit
    /// (`n - 2` degrees of freedom).
    pub fn gamma_standard_error(&self) -> f64 {
        self.gamma_fit.standard_errors[1]
    }
}

/// Runs the double-residual regression of the response on `target`,
/// partialling out all other regressor columns.
pub fn fwl_coefficient(data: &RegressionData, target: &str) -> Result<FwlResult> {
    let target_values = data.column(target)?.to_vec();
    let controls: Vec<&str> = data
        .column_names()
        .into_iter()
        .filter(|&c| c != target)
        .collect();

    let ey = partial_out(data, data.response().to_vec(), &controls)?;
    let ej = partial_out(data, target_values, &controls)?;

    let scale: f64 = data.column(target)?.iter().map(|v| v * v).sum();
    let ej_norm: f64 = ej.iter().map(|v| v * v).sum();
    if ej_norm <= 1e-24 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::ZeroResidualVariance {
            column: target.to_string(),
        });
    }

    let gamma_data = RegressionData::new(
        ey.clone(),
        vec![(format!("{target}{RESIDUAL_SUFFIX}"), ej.clone())],
        true,
    )?;
    let gamma_fit = fit_ols(&gamma_data)?;
    let gamma_hat = gamma_fit.coefficients[1];

    Ok(FwlResult {
        target_column: target.to_string(),
        control_columns: controls.iter().map(|c| c.to_string()).collect(),
        ey,
        ej,
        gamma_fit,
        gamma_hat,
    })
}

/// Residuals of `values` regressed on the control columns plus intercept.
/// With no controls and an intercept this is plain centering.
fn partial_out(data: &RegressionData, values: Vec<f64>, controls: &[&str]) -> Result<Vec<f64>> {
    if controls.is_empty() && !data.include_intercept() {
        return Ok(values);
    }
    let mut columns = Vec::with_capacity(controls.len());
    for &c in controls {
        columns.push((c.to_string(), data.column(c)?.to_vec()));
    }
    let control_data = RegressionData::new(values, columns, data.include_intercept())?;
    Ok(fit_ols(&control_data)?.residuals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn data(response: Vec<f64>, columns: Vec<(&str, Vec<f64>)>) -> RegressionData {
        RegressionData::new(
            response,
            columns
                .into_iter()
                .map(|(n, v)| (n.to_string(), v))
                .collect(),
            true,
        )
        .unwrap()
    }

    #[test]
    fn orthogonal_controls_leave_the_simple_slope() {
        // Controls orthogonal to the target: partialling them out does not
        // move the slope of y on the target.
        let d = data(
            vec![2.0, 1.0, 4.0, 3.0],
            vec![
                ("t", vec![-1.0, -1.0, 1.0, 1.0]),
                ("c", vec![-1.0, 1.0, -1.0, 1.0]),
            ],
        );
        let result = fwl_coefficient(&d, "t").unwrap();

        let y = d.response();
        let t = d.column("t").unwrap();
        let my = y.iter().sum::<f64>() / 4.0;
        let mt = t.iter().sum::<f64>() / 4.0;
        let simple_slope = y
            .iter()
            .zip(t)
            .map(|(yi, ti)| (yi - my) * (ti - mt))
            .sum::<f64>()
            / t.iter().map(|ti| (ti - mt) * (ti - mt)).sum::<f64>();

        assert_relative_eq!(result.gamma_hat, simple_slope, epsilon = 1e-12);
        assert!(result.gamma_intercept().abs() < 1e-12);
    }

    #[test]
    fn residual_series_are_orthogonal_to_controls() {
        let d = data(
            vec![1.0, 4.0, 2.0, 6.0, 5.0, 8.0],
            vec![
                ("t", vec![0.5, 1.0, 1.5, 2.5, 3.0, 4.0]),
                ("c", vec![1.0, 0.0, 2.0, 1.0, 3.0, 2.0]),
            ],
        );
        let result = fwl_coefficient(&d, "t").unwrap();
        let c = d.column("c").unwrap();
        for series in [&result.ey, &result.ej] {
            let dot: f64 = series.iter().zip(c).map(|(a, b)| a * b).sum();
            let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!(dot.abs() / (norm(series) * norm(c)) < 1e-10);
            let mean: f64 = series.iter().sum::<f64>() / series.len() as f64;
            assert!(mean.abs() < 1e-12);
        }
    }

    #[test]
    fn perfectly_explained_target_is_rejected() {
        let c = vec![0.5, 1.5, 2.0, 3.5, 4.0];
        let t: Vec<f64> = c.iter().map(|v| 3.0 * v - 1.0).collect();
        let d = data(vec![1.0, 2.0, 3.0, 4.0, 5.0], vec![("t", t), ("c", c)]);
        assert!(matches!(
            fwl_coefficient(&d, "t").unwrap_err(),
            Error::ZeroResidualVariance { .. }
        ));
    }

    #[test]
    fn unknown_target_is_rejected() {
        let d = data(
            vec![1.0, 2.0, 3.0],
            vec![("a", vec![0.0, 1.0, 3.0])],
        );
        assert!(matches!(
            fwl_coefficient(&d, "zzz").unwrap_err(),
            Error::ColumnNotFound(_)
        ));
    }
}
