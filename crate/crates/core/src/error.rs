//! Error types shared by the regression, diagnostics, and transformation
//! modules.

use thiserror::Error;

/// Errors produced by dataset construction, fitting, and diagnostics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The dataset has no observations.
    #[error("empty data: at least one observation is required")]
    EmptyData,

    /// Two containers that must have equal length do not.
    #[error("dimension mismatch for {what}: expected length {expected}, got {got}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        got: usize,
    },

    /// A column name is the empty string.
    #[error("column names must be non-empty")]
    EmptyColumnName,

    /// Two columns share a name.
    #[error("duplicate column name `{0}`")]
    DuplicateColumn(String),

    /// A regressor is constant while an intercept is present, so the two
    /// are linearly dependent.
    #[error("column `{0}` is constant and aliases the intercept")]
    ConstantColumn(String),

    /// A value is NaN or infinite.
    #[error("non-finite value in {what} at row {row}")]
    NonFiniteValue { what: String, row: usize },

    /// A named column does not exist in the dataset.
    #[error("column `{0}` not found")]
    ColumnNotFound(String),

    /// Fewer observations than estimated coefficients.
    #[error("insufficient observations: n = {n} must exceed the {p} estimated coefficients")]
    InsufficientObservations { n: usize, p: usize },

    /// The design matrix is rank deficient (exact multicollinearity):
    /// no unique least-squares solution exists.
    #[error(
        "rank deficient design matrix: singular value ratio {ratio:.3e} is at or below {threshold:.0e}"
    )]
    RankDeficient { ratio: f64, threshold: f64 },

    /// A variance that must be positive is zero (e.g. a constant response
    /// or a constant vector passed to a correlation).
    #[error("zero variance in {0}")]
    ZeroVariance(String),

    /// An auxiliary regression explains its target exactly, so the
    /// variance inflation factor is unbounded.
    #[error(
        "perfect collinearity: the auxiliary regression for `{column}` has R^2 = {r2_aux} and the VIF is unbounded"
    )]
    PerfectCollinearity { column: String, r2_aux: f64 },

    /// An auxiliary regression was requested with no predictor columns.
    #[error("no predictor columns available for the auxiliary regression of `{target}`")]
    NoPredictors { target: String },

    /// The residuals of a column partialled on the controls are
    /// numerically zero; the column is perfectly explained by them.
    #[error("residuals of `{column}` are numerically zero: the column is perfectly explained by the other regressors")]
    ZeroResidualVariance { column: String },

    /// The residualized coefficient (or its standard error) failed to
    /// reproduce the original one, signalling a numerical rank problem.
    #[error(
        "coefficient identity violated for `{column}`: relative error {relative_error:.3e} exceeds {tolerance:.0e}"
    )]
    IdentityViolation {
        column: String,
        relative_error: f64,
        tolerance: f64,
    },

    /// An input that must be strictly positive is not.
    #[error("{what} must be positive, got {value}")]
    NonPositiveInput { what: String, value: f64 },

    /// An operation needs more regressor columns than the dataset has.
    #[error("need at least {needed} regressor columns, got {got}")]
    TooFewColumns { needed: usize, got: usize },

    /// A per-column diagnostic failed; wraps the underlying error with the
    /// column it was computed for.
    #[error("while computing the VIF of `{column}`: {source}")]
    Vif {
        column: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True for failures of the numerics themselves (rank deficiency,
    /// unbounded diagnostics, broken identities) as opposed to malformed
    /// input data.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::RankDeficient { .. }
            | Error::ZeroVariance(_)
            | Error::PerfectCollinearity { .. }
            | Error::ZeroResidualVariance { .. }
            | Error::IdentityViolation { .. } => true,
            Error::Vif { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
