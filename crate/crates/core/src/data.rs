//! Dataset container for regression problems: a response vector plus named
//! regressor columns, with an optional intercept.
//!
//! The intercept is never stored as a column. When enabled it is prepended
//! to the design matrix at fit time as an explicit column of ones, so every
//! downstream formula treats it uniformly with the other coefficients.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Name given to the intercept coefficient in fit output.
pub const INTERCEPT_NAME: &str = "intercept";

/// A named regressor column.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
}

/// A response vector together with named regressor columns.
///
/// Invariants enforced at construction:
/// - the response and every column have the same length `n >= 1`;
/// - all values are finite;
/// - column names are unique and non-empty;
/// - no column is constant while the intercept is enabled (it would alias
///   the intercept exactly).
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionData {
    response: Vec<f64>,
    columns: Vec<Column>,
    include_intercept: bool,
}

impl RegressionData {
    pub fn new(
        response: Vec<f64>,
        columns: Vec<(String, Vec<f64>)>,
        include_intercept: bool,
    ) -> Result<Self> {
        let n = response.len();
        if n == 0 {
            return Err(Error::EmptyData);
        }
        check_finite("response", &response)?;

        let mut seen: Vec<&str> = Vec::with_capacity(columns.len());
        for (name, values) in &columns {
            if name.is_empty() {
                return Err(Error::EmptyColumnName);
            }
            if seen.contains(&name.as_str()) {
                return Err(Error::DuplicateColumn(name.clone()));
            }
            seen.push(name);

            if values.len() != n {
                return Err(Error::DimensionMismatch {
                    what: format!("column `{name}`"),
                    expected: n,
                    got: values.len(),
                });
            }
            check_finite(name, values)?;
            if include_intercept && values.iter().all(|v| *v == values[0]) {
                return Err(Error::ConstantColumn(name.clone()));
            }
        }

        Ok(Self {
            response,
            columns: columns
                .into_iter()
                .map(|(name, values)| Column { name, values })
                .collect(),
            include_intercept,
        })
    }

    /// Number of observations.
    pub fn n(&self) -> usize {
        self.response.len()
    }

    /// Number of estimated coefficients, intercept included.
    pub fn num_coefficients(&self) -> usize {
        self.columns.len() + usize::from(self.include_intercept)
    }

    pub fn include_intercept(&self) -> bool {
        self.include_intercept
    }

    pub fn response(&self) -> &[f64] {
        &self.response
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column_names(&self) -> Vec<&str> {
        self.columns.iter().map(|c| c.name.as_str()).collect()
    }

    pub fn column(&self, name: &str) -> Result<&[f64]> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.values.as_slice())
            .ok_or_else(|| Error::ColumnNotFound(name.to_string()))
    }

    pub fn has_column(&self, name: &str) -> bool {
        self.columns.iter().any(|c| c.name == name)
    }

    /// Names of the fitted coefficients in design-matrix order: the
    /// intercept (when present) followed by the columns.
    pub fn coefficient_names(&self) -> Vec<String> {
        let mut names = Vec::with_capacity(self.num_coefficients());
        if self.include_intercept {
            names.push(INTERCEPT_NAME.to_string());
        }
        names.extend(self.columns.iter().map(|c| c.name.clone()));
        names
    }

    /// The n x p design matrix, intercept column first when enabled.
    pub(crate) fn design_matrix(&self) -> DMatrix<f64> {
        let n = self.n();
        let p = self.num_coefficients();
        let offset = usize::from(self.include_intercept);
        DMatrix::from_fn(n, p, |i, j| {
            if self.include_intercept && j == 0 {
                1.0
            } else {
                self.columns[j - offset].values[i]
            }
        })
    }

    /// New dataset with one column's values replaced and the column renamed,
    /// keeping its position. Used to substitute a regressor by its
    /// auxiliary-regression residuals.
    pub fn with_column_replaced(
        &self,
        name: &str,
        new_name: &str,
        values: Vec<f64>,
    ) -> Result<Self> {
        if !self.has_column(name) {
            return Err(Error::ColumnNotFound(name.to_string()));
        }
        let columns = self
            .columns
            .iter()
            .map(|c| {
                if c.name == name {
                    (new_name.to_string(), values.clone())
                } else {
                    (c.name.clone(), c.values.clone())
                }
            })
            .collect();
        Self::new(self.response.clone(), columns, self.include_intercept)
    }

    /// New dataset whose response is the named column and whose regressors
    /// are the given predictor columns, always with an intercept. This is
    /// the design of an auxiliary regression.
    pub fn auxiliary_data(&self, target: &str, predictors: &[&str]) -> Result<Self> {
        let response = self.column(target)?.to_vec();
        let mut columns = Vec::with_capacity(predictors.len());
        for &p in predictors {
            if p == target {
                return Err(Error::DuplicateColumn(p.to_string()));
            }
            columns.push((p.to_string(), self.column(p)?.to_vec()));
        }
        Self::new(response, columns, true)
    }
}

fn check_finite(what: &str, values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(row) => Err(Error::NonFiniteValue {
            what: what.to_string(),
            row,
        }),
        None => Ok(()),
    }
}
