//! Bivariate correlation analysis.

use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};
use crate::regression::dataset::{Dataset, Observation};

/// Significance threshold for the two-tailed test.
pub const SIGNIFICANCE_LEVEL: f64 = 0.05;

/// Sample Pearson correlation, accumulated in one pass with running co-moments.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "pearson needs at least 3 points, got {}",
            x.len()
        )));
    }
    let (mut mx, mut my) = (0.0, 0.0);
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (i, (&a, &b)) in x.iter().zip(y).enumerate() {
        let k = (i + 1) as f64;
        let dx = a - mx;
        let dy = b - my;
        mx += dx / k;
        my += dy / k;
        sxx += dx * (a - mx);
        syy += dy * (b - my);
        sxy += dx * (b - my);
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return Err(Error::UndefinedCorrelation("constant input".into()));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// Two-tailed p-value of a Pearson correlation `r` over `n` points, from
/// Student's t with `n - 2` degrees of freedom.
pub fn pearson_pvalue(r: f64, n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "p-value needs n >= 3, got {n}"
        )));
    }
    if !r.is_finite() || r.abs() > 1.0 {
        return Err(Error::InvalidParameter(format!("correlation {r} outside [-1, 1]")));
    }
    if r.abs() == 1.0 {
        return Ok(0.0);
    }
    let dof = (n - 2) as f64;
    let t = r.abs() * dof.sqrt() / (1.0 - r * r).sqrt();
    let dist = StudentsT::new(0.0, 1.0, dof).map_err(|e| Error::Internal(e.to_string()))?;
    Ok((2.0 * (1.0 - dist.cdf(t))).clamp(0.0, 1.0))
}

/// Transformations of the fine-tuning sample count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NTransform {
    Linear,
    Log,
    LogSquared,
}

impl NTransform {
    pub const ALL: [NTransform; 3] = [NTransform::Linear, NTransform::Log, NTransform::LogSquared];

    pub fn apply(self, n: u32) -> f64 {
        let l = (n as f64 + 1.0).ln();
        match self {
            NTransform::Linear => n as f64,
            NTransform::Log => l,
            NTransform::LogSquared => l * l,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NTransform::Linear => "n",
            NTransform::Log => "log(n+1)",
            NTransform::LogSquared => "log^2(n+1)",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    /// Feature against the zero-shot target column.
    Feature,
    /// Transform of `n` against the score.
    NTransform,
}

impl Block {
    pub fn name(self) -> &'static str {
        match self {
            Block::Feature => "feature",
            Block::NTransform => "n_transform",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationRow {
    pub block: Block,
    pub variable: String,
    pub r: f64,
    pub p_value: f64,
    pub n_obs: usize,
}

impl CorrelationRow {
    pub fn significant(&self) -> bool {
        self.p_value <= SIGNIFICANCE_LEVEL
    }

    /// `r` as a percentage with one decimal, starred when significant.
    pub fn display(&self) -> String {
        let star = if self.significant() { "*" } else { "" };
        format!("{:.1}{star}", self.r * 100.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationReport {
    pub task: String,
    pub rows: Vec<CorrelationRow>,
    pub warnings: Vec<String>,
}

/// Correlates each dataset feature with the dataset target, then each
/// transform of `n` with the observed score over the task's observations.
/// Features whose correlation is undefined are omitted with a warning.
pub fn correlation_report(
    dataset: &Dataset,
    observations: &[Observation],
    transforms: &[NTransform],
) -> Result<CorrelationReport> {
    if dataset.is_empty() {
        return Err(Error::EmptyInput("dataset has no rows".into()));
    }
    let mut report = CorrelationReport {
        task: dataset.task.clone(),
        rows: Vec::new(),
        warnings: Vec::new(),
    };
    let all = dataset.all_rows();
    let y = dataset.targets(&all);
    for (j, name) in dataset.feature_names.iter().enumerate() {
        let x = dataset.column(j, &all);
        match pearson(&x, &y).and_then(|r| Ok((r, pearson_pvalue(r, x.len())?))) {
            Ok((r, p_value)) => report.rows.push(CorrelationRow {
                block: Block::Feature,
                variable: name.clone(),
                r,
                p_value,
                n_obs: x.len(),
            }),
            Err(e) => {
                let msg = format!("{name}: {e}");
                log::warn!("omitting correlation row {msg}");
                report.warnings.push(msg);
            }
        }
    }

    let task_obs: Vec<&Observation> = observations
        .iter()
        .filter(|o| o.task == dataset.task)
        .collect();
    let scores: Vec<f64> = task_obs.iter().map(|o| o.score).collect();
    for &t in transforms {
        let x: Vec<f64> = task_obs.iter().map(|o| t.apply(o.n)).collect();
        match pearson(&x, &scores).and_then(|r| Ok((r, pearson_pvalue(r, x.len())?))) {
            Ok((r, p_value)) => report.rows.push(CorrelationRow {
                block: Block::NTransform,
                variable: t.name().to_string(),
                r,
                p_value,
                n_obs: x.len(),
            }),
            Err(e) => {
                let msg = format!("{}: {e}", t.name());
                log::warn!("omitting correlation row {msg}");
                report.warnings.push(msg);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pearson_examples() {
        assert!((pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap() - 1.0).abs() < 1e-15);
        assert!((pearson(&[1.0, 2.0, 3.0], &[6.0, 4.0, 2.0]).unwrap() + 1.0).abs() < 1e-15);
        assert!((pearson(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn pearson_errors() {
        assert!(matches!(
            pearson(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]),
            Err(Error::UndefinedCorrelation(_))
        ));
        assert!(pearson(&[1.0, 2.0], &[1.0, 2.0]).is_err());
        assert!(pearson(&[1.0, 2.0, 3.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn pvalue_examples() {
        assert!((pearson_pvalue(0.0, 10).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(pearson_pvalue(1.0, 10).unwrap(), 0.0);
        assert_eq!(pearson_pvalue(-1.0, 10).unwrap(), 0.0);
        let p = pearson_pvalue(0.444, 20).unwrap();
        assert!((p - 0.05).abs() < 0.002, "{p}");
        assert!(pearson_pvalue(0.5, 2).is_err());
    }

    #[test]
    fn display_matches_table_style() {
        let row = CorrelationRow {
            block: Block::Feature,
            variable: "synt".into(),
            r: 0.3841,
            p_value: 0.001,
            n_obs: 90,
        };
        assert_eq!(row.display(), "38.4*");
        let row = CorrelationRow {
            r: -0.024,
            p_value: 0.8,
            ..row
        };
        assert_eq!(row.display(), "-2.4");
    }
}
