//! Exact-arithmetic least-squares oracle.
//!
//! Solves the normal equations `(X^T X) b = X^T y` in arbitrary-precision
//! rational arithmetic, starting from the exact binary values of the f64
//! inputs. Every intermediate quantity (Gram matrix, solution, residuals,
//! residual sum of squares, inverse diagonal) is exact; rounding happens
//! only when converting the final numbers back to f64 and taking square
//! roots for the standard errors.
//!
//! This is deliberately the method the production fit avoids (it squares
//! the condition number), which makes it an independent cross-check: the
//! two agree on any design the production fit accepts.

use num::bigint::BigInt;
use num::rational::{BigRational, Ratio};
use num::traits::{Signed, ToPrimitive, Zero};

use residlm_core::RegressionData;

/// Exact normal-equations fit, rounded to f64 at the end.
#[derive(Debug, Clone)]
pub struct OracleFit {
    pub coefficients: Vec<f64>,
    pub standard_errors: Vec<f64>,
    pub sigma2_hat: f64,
    pub r_squared: f64,
    pub residuals: Vec<f64>,
}

fn big(v: f64) -> BigRational {
    Ratio::from_float(v).expect("finite input")
}

/// Computes the least-squares fit of `data` by solving the normal equations
/// exactly.
///
/// Panics if the Gram matrix is exactly singular; callers are expected to
/// feed full-rank designs.
pub fn normal_equations_fit(data: &RegressionData) -> OracleFit {
    let n = data.n();
    let p = data.num_coefficients();
    assert!(n > p, "oracle needs n > p");

    // Design matrix rows, intercept first.
    let design: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row = Vec::with_capacity(p);
            if data.include_intercept() {
                row.push(BigRational::from_integer(BigInt::from(1)));
            }
            for col in data.columns() {
                row.push(big(col.values[i]));
            }
            row
        })
        .collect();
    let response: Vec<BigRational> = data.response().iter().map(|&v| big(v)).collect();

    // Gram matrix and moment vector.
    let mut gram = vec![vec![BigRational::zero(); p]; p];
    let mut moment = vec![BigRational::zero(); p];
    for i in 0..n {
        for a in 0..p {
            for b in a..p {
                let prod = &design[i][a] * &design[i][b];
                gram[a][b] += &prod;
                if a != b {
                    gram[b][a] += prod;
                }
            }
            moment[a] += &design[i][a] * &response[i];
        }
    }

    // Solve against the moment vector and the identity in one elimination.
    let mut rhs: Vec<Vec<BigRational>> = vec![moment];
    for k in 0..p {
        let mut e = vec![BigRational::zero(); p];
        e[k] = BigRational::from_integer(BigInt::from(1));
        rhs.push(e);
    }
    let solved = solve_exact(gram, rhs);
    let beta = &solved[0];
    let inverse_diag: Vec<BigRational> = (1..=p).map(|k| solved[k][k - 1].clone()).collect();

    // Exact residuals and sums of squares.
    let residuals: Vec<BigRational> = (0..n)
        .map(|i| {
            let mut fitted = BigRational::zero();
            for a in 0..p {
                fitted += &design[i][a] * &beta[a];
            }
            &response[i] - fitted
        })
        .collect();
    let rss: BigRational = residuals.iter().map(|r| r * r).sum();
    let dof = BigRational::from_integer(BigInt::from((n - p) as i64));
    let sigma2 = &rss / &dof;

    let mean: BigRational =
        response.iter().sum::<BigRational>() / BigRational::from_integer(BigInt::from(n as i64));
    let tss: BigRational = if data.include_intercept() {
        response
            .iter()
            .map(|v| {
                let d = v - &mean;
                &d * &d
            })
            .sum()
    } else {
        response.iter().map(|v| v * v).sum()
    };
    let r_squared = if tss.is_zero() {
        1.0
    } else {
        to_f64(&(BigRational::from_integer(BigInt::from(1)) - &rss / &tss))
    };

    OracleFit {
        coefficients: beta.iter().map(to_f64).collect(),
        standard_errors: inverse_diag
            .iter()
            .map(|d| to_f64(&(&sigma2 * d)).sqrt())
            .collect(),
        sigma2_hat: to_f64(&sigma2),
        r_squared,
        residuals: residuals.iter().map(to_f64).collect(),
    }
}

/// Gaussian elimination with partial pivoting over the rationals; exact.
/// `rhs` holds several right-hand-side vectors; returns one solution per
/// vector.
fn solve_exact(mut m: Vec<Vec<BigRational>>, rhs: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let p = m.len();
    let mut aug: Vec<Vec<BigRational>> = (0..p)
        .map(|r| {
            let mut row = std::mem::take(&mut m[r]);
            for v in &rhs {
                row.push(v[r].clone());
            }
            row
        })
        .collect();
    let width = aug[0].len();

    for col in 0..p {
        let pivot = (col..p)
            .max_by(|&a, &b| aug[a][col].abs().cmp(&aug[b][col].abs()))
            .unwrap();
        assert!(!aug[pivot][col].is_zero(), "oracle: singular Gram matrix");
        aug.swap(col, pivot);
        for r in 0..p {
            if r != col && !aug[r][col].is_zero() {
                let factor = &aug[r][col] / &aug[col][col];
                for c in col..width {
                    let delta = &factor * &aug[col][c];
                    aug[r][c] -= delta;
                }
            }
        }
    }

    (0..rhs.len())
        .map(|j| (0..p).map(|r| &aug[r][p + j] / &aug[r][r]).collect())
        .collect()
}

fn to_f64(v: &BigRational) -> f64 {
    v.to_f64().expect("rational fits in f64")
}
