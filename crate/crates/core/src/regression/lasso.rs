//! L1-penalized least squares by cyclic coordinate descent.
//!
//! Minimizes `(1/2m) ||y - b0 - X b||^2 + lambda ||b||_1` with an unpenalized
//! intercept. Columns and target are centered once up front, so the intercept
//! drops out of the coordinate updates and is recovered at the end.

use crate::error::{Error, Result};

/// Sweeps stop once no coefficient moves by more than this.
pub const TOLERANCE: f64 = 1e-8;
pub const MAX_SWEEPS: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct LassoFit {
    pub intercept: f64,
    pub coefficients: Vec<f64>,
    pub sweeps: usize,
    pub converged: bool,
}

impl LassoFit {
    pub fn predict(&self, row: &[f64]) -> f64 {
        self.intercept
            + self
                .coefficients
                .iter()
                .zip(row)
                .map(|(b, x)| b * x)
                .sum::<f64>()
    }
}

/// `sign(z) * max(|z| - gamma, 0)`
#[inline]
pub fn soft_threshold(z: f64, gamma: f64) -> f64 {
    if z > gamma {
        z - gamma
    } else if z < -gamma {
        z + gamma
    } else {
        0.0
    }
}

fn validate(columns: &[Vec<f64>], y: &[f64], lambda: f64) -> Result<usize> {
    let m = y.len();
    if m == 0 {
        return Err(Error::EmptyInput("no rows to fit".into()));
    }
    if lambda < 0.0 || !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!("lambda {lambda} must be >= 0")));
    }
    for (j, col) in columns.iter().enumerate() {
        if col.len() != m {
            return Err(Error::LengthMismatch {
                left: col.len(),
                right: m,
            });
        }
        if col.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix(format!("column {j} has non-finite entries")));
        }
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidMatrix("target has non-finite entries".into()));
    }
    Ok(m)
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Smallest penalty at which every coefficient is zero.
pub fn lambda_max(columns: &[Vec<f64>], y: &[f64]) -> Result<f64> {
    let m = validate(columns, y, 0.0)? as f64;
    let ybar = mean(y);
    Ok(columns
        .iter()
        .map(|col| {
            let xbar = mean(col);
            (col.iter()
                .zip(y)
                .map(|(x, yv)| (x - xbar) * (yv - ybar))
                .sum::<f64>()
                / m)
                .abs()
        })
        .fold(0.0, f64::max))
}

/// Fits the lasso on column-major `columns` (one `Vec` per feature).
pub fn lasso_fit(columns: &[Vec<f64>], y: &[f64], lambda: f64) -> Result<LassoFit> {
    let m = validate(columns, y, lambda)?;
    let mf = m as f64;
    let p = columns.len();

    let xbar: Vec<f64> = columns.iter().map(|c| mean(c)).collect();
    let ybar = mean(y);
    let centered: Vec<Vec<f64>> = columns
        .iter()
        .zip(&xbar)
        .map(|(c, &mu)| c.iter().map(|x| x - mu).collect())
        .collect();
    let z: Vec<f64> = centered
        .iter()
        .map(|c| c.iter().map(|x| x * x).sum::<f64>() / mf)
        .collect();

    let mut beta = vec![0.0; p];
    let mut resid: Vec<f64> = y.iter().map(|v| v - ybar).collect();
    let mut sweeps = 0;
    let mut converged = p == 0;

    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        let mut max_change: f64 = 0.0;
        for j in 0..p {
            if z[j] <= 0.0 {
                continue;
            }
            let xj = &centered[j];
            let rho = xj.iter().zip(&resid).map(|(x, r)| x * r).sum::<f64>() / mf + z[j] * beta[j];
            let new = soft_threshold(rho, lambda) / z[j];
            let delta = new - beta[j];
            if delta != 0.0 {
                for (r, x) in resid.iter_mut().zip(xj) {
                    *r -= delta * x;
                }
                beta[j] = new;
                max_change = max_change.max(delta.abs());
            }
        }
        converged = max_change < TOLERANCE;
    }
    if !converged {
        log::warn!("lasso stopped after {MAX_SWEEPS} sweeps without converging");
    }

    let intercept = ybar - xbar.iter().zip(&beta).map(|(x, b)| x * b).sum::<f64>();
    if !intercept.is_finite() || beta.iter().any(|b| !b.is_finite()) {
        return Err(Error::Internal("lasso produced non-finite coefficients".into()));
    }
    Ok(LassoFit {
        intercept,
        coefficients: beta,
        sweeps,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn univariate_ols() {
        let fit = lasso_fit(&[vec![-1.0, 0.0, 1.0]], &[-2.0, 0.0, 2.0], 0.0).unwrap();
        assert_eq!(fit.coefficients, vec![2.0]);
        assert_eq!(fit.intercept, 0.0);
    }

    #[test]
    fn univariate_soft_threshold() {
        let fit = lasso_fit(&[vec![-1.0, 0.0, 1.0]], &[-2.0, 0.0, 2.0], 1.0 / 3.0).unwrap();
        assert_eq!(fit.coefficients, vec![1.5]);
    }

    #[test]
    fn full_shrinkage_at_lambda_max() {
        let cols = vec![vec![0.1, 0.5, 0.2, 0.9], vec![1.0, 0.0, 0.3, 0.2]];
        let y = vec![1.0, 3.0, 2.0, 5.0];
        let lmax = lambda_max(&cols, &y).unwrap();
        let fit = lasso_fit(&cols, &y, lmax).unwrap();
        assert!(fit.coefficients.iter().all(|&b| b == 0.0));
        assert!((fit.intercept - 2.75).abs() < 1e-15);
        let fit = lasso_fit(&cols, &y, lmax * 0.9).unwrap();
        assert!(fit.coefficients.iter().any(|&b| b != 0.0));
    }

    #[test]
    fn constant_column_gets_zero() {
        let fit = lasso_fit(&[vec![1.0; 3], vec![0.0, 1.0, 2.0]], &[1.0, 2.0, 3.0], 0.0).unwrap();
        assert_eq!(fit.coefficients[0], 0.0);
        assert!((fit.coefficients[1] - 1.0).abs() < 1e-12);
        assert!((fit.intercept - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            lasso_fit(&[vec![1.0, f64::NAN]], &[1.0, 2.0], 0.1),
            Err(Error::InvalidMatrix(_))
        ));
        assert!(lasso_fit(&[vec![1.0]], &[1.0, 2.0], 0.1).is_err());
        assert!(lasso_fit(&[vec![1.0]], &[1.0], -1.0).is_err());
    }

    #[test]
    fn soft_threshold_cases() {
        assert_eq!(soft_threshold(5.0, 2.0), 3.0);
        assert_eq!(soft_threshold(1.0, 2.0), 0.0);
        assert_eq!(soft_threshold(-5.0, 2.0), -3.0);
    }
}
