//! Ordinary least squares with single-coefficient inference.
//!
//! The solve goes through a Householder QR factorization of the design
//! matrix rather than the normal equations, so near-collinear designs are
//! handled as accurately as the data allows. Rank is screened first with
//! singular values: a ratio of smallest to largest at or below
//! [`RANK_TOLERANCE`] is treated as exact multicollinearity and rejected.
//!
//! Standard errors come from the diagonal of `sigma2_hat * (X^T X)^-1`,
//! computed as `R^-1 R^-T` from the QR factor. Two-sided p-values use the
//! Student-t distribution with `n - p` degrees of freedom.

use nalgebra::{DMatrix, DVector};

use crate::data::RegressionData;
use crate::error::{Error, Result};

/// Singular-value ratio at or below which a design is rejected as rank
/// deficient.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// A fitted least-squares model with per-coefficient inference.
#[derive(Debug, Clone)]
pub struct OlsFit {
    /// Coefficient names in design order (intercept first when present).
    pub coefficient_names: Vec<String>,
    /// Point estimates, aligned with `coefficient_names`.
    pub coefficients: Vec<f64>,
    /// Standard errors of the estimates.
    pub standard_errors: Vec<f64>,
    /// t statistics, `coefficients / standard_errors`.
    pub t_stats: Vec<f64>,
    /// Two-sided p-values against the Student-t with `dof` degrees of freedom.
    pub p_values: Vec<f64>,
    /// Observed minus fitted response.
    pub residuals: Vec<f64>,
    /// Fitted response values.
    pub fitted: Vec<f64>,
    /// Coefficient of determination.
    pub r_squared: f64,
    /// Estimated error variance, RSS / (n - p).
    pub sigma2_hat: f64,
    /// Residual degrees of freedom, n - p.
    pub dof: usize,
}

impl OlsFit {
    /// Number of estimated coefficients.
    pub fn num_coefficients(&self) -> usize {
        self.coefficients.len()
    }

    /// Position of a named coefficient.
    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.coefficient_names
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::ColumnNotFound(name.to_string()))
    }

    /// Point estimate of a named coefficient.
    pub fn coefficient(&self, name: &str) -> Result<f64> {
        Ok(self.coefficients[self.index_of(name)?])
    }

    /// Standard error of a named coefficient.
    pub fn standard_error(&self, name: &str) -> Result<f64> {
        Ok(self.standard_errors[self.index_of(name)?])
    }

    /// Residual sum of squares.
    pub fn rss(&self) -> f64 {
        self.residuals.iter().map(|e| e * e).sum()
    }

    /// Significance star level of the k-th coefficient.
    pub fn significance(&self, k: usize) -> SignificanceLevel {
        SignificanceLevel::from_p_value(self.p_values[k])
    }
}

/// Confidence level at which a coefficient is individually significant,
/// derived from its two-sided p-value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignificanceLevel {
    None,
    Ninety,
    NinetyFive,
    NinetyNine,
}

impl SignificanceLevel {
    /// 99 if p < 0.01, else 95 if p < 0.05, else 90 if p < 0.10, else none.
    pub fn from_p_value(p: f64) -> Self {
        if p < 0.01 {
            SignificanceLevel::NinetyNine
        } else if p < 0.05 {
            SignificanceLevel::NinetyFive
        } else if p < 0.10 {
            SignificanceLevel::Ninety
        } else {
            SignificanceLevel::None
        }
    }

    /// Star marker used in rendered tables.
    pub fn stars(self) -> &'static str {
        match self {
            SignificanceLevel::None => "",
            SignificanceLevel::Ninety => "*",
            SignificanceLevel::NinetyFive => "**",
            SignificanceLevel::NinetyNine => "***",
        }
    }

    /// Confidence percentage, if any.
    pub fn confidence_percent(self) -> Option<u8> {
        match self {
            SignificanceLevel::None => None,
            SignificanceLevel::Ninety => Some(90),
            SignificanceLevel::NinetyFive => Some(95),
            SignificanceLevel::NinetyNine => Some(99),
        }
    }
}

/// Fits the least-squares regression of the response on the data's columns
/// (plus intercept when enabled).
pub fn fit_ols(data: &RegressionData) -> Result<OlsFit> {
    let n = data.n();
    let p = data.num_coefficients();
    if n <= p {
        return Err(Error::InsufficientObservations { n, p });
    }

    let x = data.design_matrix();
    let y = DVector::from_column_slice(data.response());

    let singular_values = x.clone().singular_values();
    let s_max = singular_values.max();
    let s_min = singular_values.min();
    let ratio = if s_max > 0.0 { s_min / s_max } else { 0.0 };
    if ratio <= RANK_TOLERANCE {
        return Err(Error::RankDeficient {
            ratio,
            threshold: RANK_TOLERANCE,
        });
    }

    let qr = x.clone().qr();
    let mut qty = y.clone();
    qr.q_tr_mul(&mut qty);
    let r = qr.r();
    let beta = r
        .solve_upper_triangular(&qty.rows(0, p).into_owned())
        .ok_or(Error::RankDeficient {
            ratio,
            threshold: RANK_TOLERANCE,
        })?;

    let fitted = &x * &beta;
    let residuals = &y - &fitted;
    let rss: f64 = residuals.iter().map(|e| e * e).sum();
    let dof = n - p;
    let sigma2_hat = rss / dof as f64;

    // (X^T X)^-1 = R^-1 R^-T, so its diagonal entries are the squared row
    // norms of R^-1.
    let r_inv = r
        .solve_upper_triangular(&DMatrix::identity(p, p))
        .ok_or(Error::RankDeficient {
            ratio,
            threshold: RANK_TOLERANCE,
        })?;
    let standard_errors: Vec<f64> = (0..p)
        .map(|k| {
            let row_sq: f64 = (0..p).map(|j| r_inv[(k, j)] * r_inv[(k, j)]).sum();
            (sigma2_hat * row_sq).sqrt()
        })
        .collect();

    let coefficients: Vec<f64> = beta.iter().copied().collect();
    let t_stats: Vec<f64> = coefficients
        .iter()
        .zip(&standard_errors)
        .map(|(&b, &se)| {
            if se > 0.0 {
                b / se
            } else if b == 0.0 {
                0.0
            } else {
                f64::INFINITY.copysign(b)
            }
        })
        .collect();
    let p_values: Vec<f64> = t_stats.iter().map(|&t| p_value_two_sided(t, dof)).collect();

    let r_squared = r_squared_from_rss(data, rss);

    Ok(OlsFit {
        coefficient_names: data.coefficient_names(),
        coefficients,
        standard_errors,
        t_stats,
        p_values,
        residuals: residuals.iter().copied().collect(),
        fitted: fitted.iter().copied().collect(),
        r_squared,
        sigma2_hat,
        dof,
    })
}

/// Recomputes the coefficient of determination of `fit` on `data`:
/// `1 - RSS/TSS`, with the total sum of squares centered when an intercept
/// is present.
///
/// Errors with [`Error::ZeroVariance`] when the response is constant
/// (TSS = 0).
pub fn r_squared_of(fit: &OlsFit, data: &RegressionData) -> Result<f64> {
    if fit.residuals.len() != data.n() {
        return Err(Error::DimensionMismatch {
            what: "fit residuals".to_string(),
            expected: data.n(),
            got: fit.residuals.len(),
        });
    }
    let tss = total_sum_of_squares(data);
    if tss == 0.0 {
        return Err(Error::ZeroVariance("response".to_string()));
    }
    Ok(clamp_unit(1.0 - fit.rss() / tss))
}

/// Two-sided Student-t tail probability `2 P(T_dof > |t|)`, computed via
/// the regularized incomplete beta function.
///
/// Monotone decreasing in `|t|`; returns 1 at `t = 0` and 0 in the
/// `|t| -> inf` limit.
///
/// Panics if `dof` is zero.
pub fn p_value_two_sided(t: f64, dof: usize) -> f64 {
    assert!(dof >= 1, "degrees of freedom must be at least 1");
    if t == 0.0 {
        return 1.0;
    }
    if t.is_infinite() {
        return 0.0;
    }
    let nu = dof as f64;
    let x = nu / (nu + t * t);
    statrs::function::beta::beta_reg(nu / 2.0, 0.5, x).clamp(0.0, 1.0)
}

fn total_sum_of_squares(data: &RegressionData) -> f64 {
    let y = data.response();
    if data.include_intercept() {
        let mean = y.iter().sum::<f64>() / y.len() as f64;
        y.iter().map(|v| (v - mean) * (v - mean)).sum()
    } else {
        y.iter().map(|v| v * v).sum()
    }
}

fn r_squared_from_rss(data: &RegressionData, rss: f64) -> f64 {
    let tss = total_sum_of_squares(data);
    if tss == 0.0 {
        // Constant response: the design reproduces it exactly.
        1.0
    } else {
        clamp_unit(1.0 - rss / tss)
    }
}

fn clamp_unit(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn data(
        response: Vec<f64>,
        columns: Vec<(&str, Vec<f64>)>,
        intercept: bool,
    ) -> RegressionData {
        RegressionData::new(
            response,
            columns
                .into_iter()
                .map(|(n, v)| (n.to_string(), v))
                .collect(),
            intercept,
        )
        .unwrap()
    }

    #[test]
    fn exact_line_is_recovered() {
        let d = data(vec![1.0, 2.0, 3.0], vec![("x", vec![0.0, 1.0, 2.0])], true);
        let fit = fit_ols(&d).unwrap();
        assert_relative_eq!(fit.coefficients[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(fit.coefficients[1], 1.0, epsilon = 1e-12);
        assert_relative_eq!(fit.r_squared, 1.0, epsilon = 1e-12);
        for e in &fit.residuals {
            assert!(e.abs() < 1e-12);
        }
    }

    #[test]
    fn constant_fit_on_intercept_only() {
        let d = data(vec![1.0, 1.0, 1.0, 1.0], vec![], true);
        let fit = fit_ols(&d).unwrap();
        assert_relative_eq!(fit.coefficients[0], 1.0, epsilon = 1e-14);
        assert!(fit.sigma2_hat < 1e-28);
        assert_eq!(fit.dof, 3);
    }

    #[test]
    fn residuals_plus_fitted_reconstruct_response() {
        let d = data(
            vec![2.1, -0.3, 4.5, 1.2, 0.0, 3.3],
            vec![
                ("a", vec![1.0, 2.0, 0.5, -1.0, 0.0, 2.5]),
                ("b", vec![0.3, -0.7, 1.1, 0.9, -0.2, 0.4]),
            ],
            true,
        );
        let fit = fit_ols(&d).unwrap();
        for i in 0..d.n() {
            assert_relative_eq!(
                fit.fitted[i] + fit.residuals[i],
                d.response()[i],
                epsilon = 1e-12
            );
        }
        // t = beta / se wherever se > 0.
        for k in 0..fit.num_coefficients() {
            assert_relative_eq!(
                fit.t_stats[k],
                fit.coefficients[k] / fit.standard_errors[k],
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn too_few_observations_is_rejected() {
        let d = data(vec![1.0, 2.0], vec![("x", vec![0.0, 1.0])], true);
        assert_eq!(
            fit_ols(&d).unwrap_err(),
            Error::InsufficientObservations { n: 2, p: 2 }
        );
    }

    #[test]
    fn exact_collinearity_is_rejected() {
        let x = vec![1.0, 2.0, 3.0, 4.0, 5.0];
        let double: Vec<f64> = x.iter().map(|v| 2.0 * v).collect();
        let d = data(
            vec![1.0, 2.0, 2.5, 4.0, 5.5],
            vec![("x", x), ("x2", double)],
            true,
        );
        assert!(matches!(
            fit_ols(&d).unwrap_err(),
            Error::RankDeficient { .. }
        ));
    }

    #[test]
    fn r_squared_of_matches_fit_and_detects_zero_variance() {
        let d = data(
            vec![1.0, 3.0, 2.0, 5.0, 4.0],
            vec![("x", vec![0.1, 1.2, 0.9, 2.1, 1.7])],
            true,
        );
        let fit = fit_ols(&d).unwrap();
        assert_relative_eq!(r_squared_of(&fit, &d).unwrap(), fit.r_squared, epsilon = 1e-14);

        let constant = data(vec![2.0, 2.0, 2.0], vec![("x", vec![0.0, 1.0, 2.0])], true);
        let cfit = fit_ols(&constant).unwrap();
        assert_eq!(
            r_squared_of(&cfit, &constant).unwrap_err(),
            Error::ZeroVariance("response".to_string())
        );
        // The fit itself reports a perfect R^2 for a constant response.
        assert_eq!(cfit.r_squared, 1.0);
    }

    #[test]
    fn zero_r_squared_when_response_orthogonal_to_regressor() {
        // Centered regressor, response orthogonal to it and to nothing else.
        let d = data(
            vec![1.0, -1.0, -1.0, 1.0],
            vec![("x", vec![-1.0, -1.0, 1.0, 1.0])],
            true,
        );
        let fit = fit_ols(&d).unwrap();
        assert!(fit.r_squared.abs() < 1e-14);
    }

    #[test]
    fn p_value_endpoints_and_frozen_value() {
        assert_eq!(p_value_two_sided(0.0, 14), 1.0);
        assert_eq!(p_value_two_sided(f64::INFINITY, 5), 0.0);
        assert!(p_value_two_sided(1e8, 3) < 1e-12);
        // Student-t critical value: P(|T_14| > 2.145) = 0.05.
        assert!((p_value_two_sided(2.145, 14) - 0.0500).abs() < 0.0005);
        // Symmetric in t.
        assert_eq!(p_value_two_sided(-1.7, 9), p_value_two_sided(1.7, 9));
    }

    #[test]
    fn significance_levels_follow_the_p_value_rule() {
        use SignificanceLevel::*;
        assert_eq!(SignificanceLevel::from_p_value(0.009), NinetyNine);
        assert_eq!(SignificanceLevel::from_p_value(0.04), NinetyFive);
        assert_eq!(SignificanceLevel::from_p_value(0.09), Ninety);
        assert_eq!(SignificanceLevel::from_p_value(0.2), None);
        assert_eq!(NinetyNine.stars(), "***");
        assert_eq!(NinetyFive.stars(), "**");
        assert_eq!(Ninety.stars(), "*");
        assert_eq!(None.stars(), "");
    }
}
