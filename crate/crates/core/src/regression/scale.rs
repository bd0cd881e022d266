use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-feature min/max observed on training data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRange {
    pub min: f64,
    pub max: f64,
}

impl FeatureRange {
    /// `(x - min) / (max - min)`, or 0 for a constant feature.
    pub fn scale(&self, x: f64) -> f64 {
        let span = self.max - self.min;
        if span > 0.0 {
            (x - self.min) / span
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    pub names: Vec<String>,
    pub ranges: Vec<FeatureRange>,
}

impl Scaler {
    /// Fits one range per column. Columns must be non-empty and finite.
    pub fn fit(names: &[String], columns: &[Vec<f64>]) -> Result<Self> {
        if names.len() != columns.len() {
            return Err(Error::LengthMismatch {
                left: names.len(),
                right: columns.len(),
            });
        }
        let mut ranges = Vec::with_capacity(columns.len());
        for (name, col) in names.iter().zip(columns) {
            if col.is_empty() {
                return Err(Error::EmptyInput(format!("column '{name}' is empty")));
            }
            if col.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidMatrix(format!("column '{name}' is not finite")));
            }
            let min = col.iter().copied().fold(f64::INFINITY, f64::min);
            let max = col.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            ranges.push(FeatureRange { min, max });
        }
        Ok(Self {
            names: names.to_vec(),
            ranges,
        })
    }

    /// A scaler that leaves `[0, 1]` inputs untouched.
    pub fn identity(names: &[String]) -> Self {
        Self {
            names: names.to_vec(),
            ranges: vec![FeatureRange { min: 0.0, max: 1.0 }; names.len()],
        }
    }

    pub fn range(&self, name: &str) -> Option<&FeatureRange> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| &self.ranges[i])
    }

    pub fn transform_columns(&self, columns: &[Vec<f64>]) -> Vec<Vec<f64>> {
        columns
            .iter()
            .zip(&self.ranges)
            .map(|(col, r)| col.iter().map(|&x| r.scale(x)).collect())
            .collect()
    }

    /// Keeps only the named features, in the given order.
    pub fn restrict(&self, names: &[String]) -> Self {
        let ranges = names
            .iter()
            .map(|n| self.range(n).cloned().expect("feature present in scaler"))
            .collect();
        Self {
            names: names.to_vec(),
            ranges,
        }
    }
}

/// Fits a scaler on `columns` and returns the scaled columns with it.
pub fn minmax_scale(names: &[String], columns: &[Vec<f64>]) -> Result<(Vec<Vec<f64>>, Scaler)> {
    let scaler = Scaler::fit(names, columns)?;
    Ok((scaler.transform_columns(columns), scaler))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("f{i}")).collect()
    }

    #[test]
    fn endpoints_and_midpoint() {
        let (scaled, s) = minmax_scale(&names(1), &[vec![2.0, 4.0, 6.0]]).unwrap();
        assert_eq!(scaled[0], vec![0.0, 0.5, 1.0]);
        assert_eq!(s.ranges[0], FeatureRange { min: 2.0, max: 6.0 });
        assert_eq!(s.ranges[0].scale(4.0), 0.5);
    }

    #[test]
    fn constant_column_maps_to_zero() {
        let (scaled, _) = minmax_scale(&names(1), &[vec![5.0, 5.0]]).unwrap();
        assert_eq!(scaled[0], vec![0.0, 0.0]);
    }

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(minmax_scale(&names(1), &[vec![]]).is_err());
        assert!(minmax_scale(&names(1), &[vec![1.0, f64::NAN]]).is_err());
        assert!(minmax_scale(&names(2), &[vec![1.0]]).is_err());
    }

    #[test]
    fn restrict_keeps_order() {
        let s = Scaler::fit(&names(3), &[vec![0.0, 1.0], vec![0.0, 2.0], vec![0.0, 3.0]]).unwrap();
        let r = s.restrict(&["f2".to_string(), "f0".to_string()]);
        assert_eq!(r.ranges[0].max, 3.0);
        assert_eq!(r.ranges[1].max, 1.0);
    }
}
