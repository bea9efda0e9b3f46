//! Residual substitution for collinear regressors.
//!
//! A target regressor is regressed on the remaining regressors (the
//! auxiliary regression); the target column is then replaced by the
//! auxiliary residuals and the model refitted. The transformed design spans
//! the same column space, so the refit is an exact reparametrization:
//!
//! - the coefficient and standard error of the residualized column equal
//!   those of the original column;
//! - the intercept and the other coefficients absorb the auxiliary
//!   coefficients (`delta_1 = beta_1 + beta_t * alpha_1`,
//!   `delta_h = beta_h + beta_t * alpha_h`);
//! - fitted values, residuals, `sigma2_hat` and R-squared are unchanged.
//!
//! The residual column is orthogonal to every other regressor and to the
//! intercept, so its coefficient reads as the effect of the part of the
//! target not explained by the rest, and its VIF collapses to 1.
//!
//! The identities are verified on every call; a violation beyond
//! [`IDENTITY_TOLERANCE`] is reported as an error because it signals a
//! numerical rank problem that would invalidate the reparametrized
//! interpretation.

use crate::data::{RegressionData, INTERCEPT_NAME};
use crate::error::{Error, Result};
use crate::ols::{fit_ols, OlsFit};

/// Suffix appended to a residualized column's name so reports distinguish
/// the residual series from the original regressor.
pub const RESIDUAL_SUFFIX: &str = "_resid";

/// Relative tolerance beyond which the coefficient identity is treated as
/// numerically broken.
pub const IDENTITY_TOLERANCE: f64 = 1e-8;

/// Auxiliary R-squared at or beyond which residualization is refused: the
/// residual column would be numerically zero.
const PERFECT_R2: f64 = 1.0 - 1e-12;

/// OLS regression of one regressor on a subset of the others
/// (plus intercept).
#[derive(Debug, Clone)]
pub struct AuxiliaryFit {
    pub target_column: String,
    pub predictor_columns: Vec<String>,
    /// Estimated auxiliary coefficients, intercept first.
    pub alpha_hat: Vec<f64>,
    /// Target minus auxiliary fitted values.
    pub residuals: Vec<f64>,
    /// Coefficient of determination of the auxiliary regression.
    pub r2_aux: f64,
}

impl AuxiliaryFit {
    /// Auxiliary coefficient of a predictor column (or the intercept).
    pub fn alpha(&self, name: &str) -> Option<f64> {
        if name == INTERCEPT_NAME {
            return Some(self.alpha_hat[0]);
        }
        self.predictor_columns
            .iter()
            .position(|p| p == name)
            .map(|i| self.alpha_hat[i + 1])
    }
}

/// How each original coefficient is recovered from the residualized fit:
/// `beta_name = delta_name - delta_target * alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientLink {
    /// Coefficient name in the original fit.
    pub original_name: String,
    /// Auxiliary coefficient multiplying `delta_target` in the recovery
    /// (zero for the target itself).
    pub alpha: f64,
}

/// A model refitted with one regressor replaced by its auxiliary residuals,
/// together with the original fit and the map linking the two
/// parametrizations.
#[derive(Debug, Clone)]
pub struct ResidualizedModel {
    pub auxiliary: AuxiliaryFit,
    /// The original data with the target column replaced by the auxiliary
    /// residuals and renamed with [`RESIDUAL_SUFFIX`].
    pub transformed_data: RegressionData,
    /// Fit of the transformed data (the `delta` estimates).
    pub fit: OlsFit,
    /// Fit of the original data (the `beta` estimates).
    pub original_fit: OlsFit,
    /// Recovery map from the transformed coefficients back to the original
    /// ones, aligned with `original_fit.coefficient_names`.
    pub recovery: Vec<CoefficientLink>,
}

impl ResidualizedModel {
    /// Name of the residual column in the transformed data.
    pub fn residualized_column(&self) -> String {
        format!("{}{}", self.auxiliary.target_column, RESIDUAL_SUFFIX)
    }

    /// Reconstructs the original coefficients from the residualized fit and
    /// the auxiliary coefficients; see [`recover_original`].
    pub fn recover_original(&self) -> Vec<f64> {
        recover_original(self)
    }
}

/// Fits the auxiliary regression of `target` on `predictors` plus an
/// intercept.
pub fn fit_auxiliary(
    data: &RegressionData,
    target: &str,
    predictors: &[&str],
) -> Result<AuxiliaryFit> {
    if !data.has_column(target) {
        return Err(Error::ColumnNotFound(target.to_string()));
    }
    if predictors.is_empty() {
        return Err(Error::NoPredictors {
            target: target.to_string(),
        });
    }
    let aux_data = data.auxiliary_data(target, predictors)?;
    let fit = fit_ols(&aux_data)?;
    Ok(AuxiliaryFit {
        target_column: target.to_string(),
        predictor_columns: predictors.iter().map(|p| p.to_string()).collect(),
        alpha_hat: fit.coefficients,
        residuals: fit.residuals,
        r2_aux: fit.r_squared,
    })
}

/// Residualizes `target` on all remaining regressors: fits the auxiliary
/// regression, substitutes the residual column, refits, and verifies the
/// coefficient identities.
pub fn residualize(data: &RegressionData, target: &str) -> Result<ResidualizedModel> {
    let original_fit = fit_ols(data)?;

    let predictors: Vec<&str> = data
        .column_names()
        .into_iter()
        .filter(|&c| c != target)
        .collect();
    let auxiliary = fit_auxiliary(data, target, &predictors)?;
    if auxiliary.r2_aux >= PERFECT_R2 {
        return Err(Error::PerfectCollinearity {
            column: target.to_string(),
            r2_aux: auxiliary.r2_aux,
        });
    }

    let residual_name = format!("{target}{RESIDUAL_SUFFIX}");
    let transformed_data =
        data.with_column_replaced(target, &residual_name, auxiliary.residuals.clone())?;
    let fit = fit_ols(&transformed_data)?;

    // Noise floors: values at rounding level (e.g. the standard errors of
    // an exactly-fitting model) are zero for identity purposes, so their
    // relative difference is not evidence of a rank problem.
    let coef_scale = original_fit
        .coefficients
        .iter()
        .fold(0.0_f64, |m, c| m.max(c.abs()));
    let n = data.n() as f64;
    let y_rms = (data.response().iter().map(|v| v * v).sum::<f64>() / n).sqrt();

    let delta = fit.coefficient(&residual_name)?;
    let beta = original_fit.coefficient(target)?;
    check_identity(target, delta, beta, 16.0 * f64::EPSILON * coef_scale)?;

    // When the response is an exact linear combination of the design, the
    // residual sum of squares is pure rounding noise and so are both
    // standard errors; comparing them says nothing about rank.
    let mean = data.response().iter().sum::<f64>() / n;
    let tss: f64 = data.response().iter().map(|v| (v - mean) * (v - mean)).sum();
    let exact_fit = original_fit.rss() <= 1e-24 * tss;
    if !exact_fit {
        check_identity(
            target,
            fit.standard_error(&residual_name)?,
            original_fit.standard_error(target)?,
            16.0 * f64::EPSILON * y_rms,
        )?;
    }

    let recovery = original_fit
        .coefficient_names
        .iter()
        .map(|name| CoefficientLink {
            original_name: name.clone(),
            alpha: if name == target {
                0.0
            } else {
                // Every non-target coefficient appears in the auxiliary fit.
                auxiliary.alpha(name).unwrap_or(0.0)
            },
        })
        .collect();

    Ok(ResidualizedModel {
        auxiliary,
        transformed_data,
        fit,
        original_fit,
        recovery,
    })
}

/// Reconstructs the original coefficients from the residualized ones:
/// the target keeps its coefficient, and every other coefficient sheds the
/// auxiliary contribution it absorbed.
pub fn recover_original(model: &ResidualizedModel) -> Vec<f64> {
    let delta_target = model
        .fit
        .coefficient(&model.residualized_column())
        .expect("residualized column is present in its own fit");
    model
        .fit
        .coefficients
        .iter()
        .zip(&model.recovery)
        .map(|(&delta, link)| delta - delta_target * link.alpha)
        .collect()
}

fn check_identity(column: &str, transformed: f64, original: f64, noise_floor: f64) -> Result<()> {
    let scale = transformed.abs().max(original.abs());
    if scale <= noise_floor {
        return Ok(());
    }
    let relative_error = (transformed - original).abs() / scale;
    if relative_error > IDENTITY_TOLERANCE {
        return Err(Error::IdentityViolation {
            column: column.to_string(),
            relative_error,
            tolerance: IDENTITY_TOLERANCE,
        });
    }
    Ok(())
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
    fn independent_predictor_gives_zero_auxiliary_slope() {
        // Target orthogonal to a centered predictor: the auxiliary slope
        // vanishes and the residuals are the centered target.
        let target = vec![3.0, 1.0, 1.0, 3.0];
        let d = data(
            vec![1.0, 2.0, 3.0, 4.0],
            vec![
                ("t", target.clone()),
                ("x", vec![-1.0, -1.0, 1.0, 1.0]),
            ],
        );
        let aux = fit_auxiliary(&d, "t", &["x"]).unwrap();
        assert!(aux.alpha_hat[1].abs() < 1e-14);
        assert_relative_eq!(aux.alpha_hat[0], 2.0, epsilon = 1e-14);
        let mean = 2.0;
        for (r, t) in aux.residuals.iter().zip(&target) {
            assert_relative_eq!(*r, t - mean, epsilon = 1e-14);
        }
    }

    #[test]
    fn exactly_explained_target_has_unit_r2() {
        let x = vec![0.5, 1.0, 2.5, 3.0, 4.5];
        let twice: Vec<f64> = x.iter().map(|v| 2.0 * v).collect();
        let d = data(vec![1.0, 2.0, 3.0, 4.0, 5.0], vec![("t", twice), ("x", x)]);
        let aux = fit_auxiliary(&d, "t", &["x"]).unwrap();
        assert!(aux.r2_aux > 1.0 - 1e-12);
        for r in &aux.residuals {
            assert!(r.abs() < 1e-10);
        }
        // residualize propagates the rank failure of the full design.
        assert!(matches!(
            residualize(&d, "t").unwrap_err(),
            Error::RankDeficient { .. }
        ));
    }

    #[test]
    fn auxiliary_argument_validation() {
        let d = data(
            vec![1.0, 2.0, 3.0, 4.0],
            vec![("a", vec![1.0, 2.0, 3.0, 5.0]), ("b", vec![0.0, 1.0, 1.0, 0.0])],
        );
        assert!(matches!(
            fit_auxiliary(&d, "zzz", &["a"]).unwrap_err(),
            Error::ColumnNotFound(_)
        ));
        assert!(matches!(
            fit_auxiliary(&d, "a", &[]).unwrap_err(),
            Error::NoPredictors { .. }
        ));
        assert!(matches!(
            fit_auxiliary(&d, "a", &["a"]).unwrap_err(),
            Error::DuplicateColumn(_)
        ));
    }

    #[test]
    fn residualize_requires_a_second_regressor() {
        let d = data(vec![1.0, 2.0, 3.0], vec![("a", vec![0.0, 1.0, 3.0])]);
        assert!(matches!(
            residualize(&d, "a").unwrap_err(),
            Error::NoPredictors { .. }
        ));
    }

    #[test]
    fn residual_column_is_renamed_in_place() {
        let d = data(
            vec![2.0, 4.0, 5.0, 4.0, 7.0, 9.0],
            vec![
                ("u", vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.5]),
                ("v", vec![1.1, 2.3, 2.8, 4.4, 4.9, 6.3]),
            ],
        );
        let model = residualize(&d, "u").unwrap();
        assert_eq!(model.transformed_data.column_names(), vec!["u_resid", "v"]);
        assert_eq!(model.residualized_column(), "u_resid");
        assert_eq!(
            model.fit.coefficient_names,
            vec!["intercept", "u_resid", "v"]
        );
    }

    #[test]
    fn orthogonal_design_only_shifts_the_intercept() {
        // With centered orthogonal regressors every slope is untouched and
        // the intercept absorbs beta_t * mean(target); the target here is
        // centered too, so even the intercept is unchanged.
        let d = data(
            vec![1.0, 2.0, 3.0, 4.0],
            vec![
                ("a", vec![-1.0, -1.0, 1.0, 1.0]),
                ("b", vec![-1.0, 1.0, -1.0, 1.0]),
            ],
        );
        let model = residualize(&d, "a").unwrap();
        for (d_hat, b_hat) in model
            .fit
            .coefficients
            .iter()
            .zip(&model.original_fit.coefficients)
        {
            assert_relative_eq!(d_hat, b_hat, epsilon = 1e-12);
        }
    }
}
