use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::regression::dataset::Dataset;
use crate::regression::rfe::rfe;
use crate::regression::scale::{minmax_scale, Scaler};
use crate::similarity::PairFeatureVector;

pub const DEFAULT_LAMBDA: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    /// Predicts the zero-shot score.
    ZeroShot,
    /// Predicts the few-shot slope.
    Alpha,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::ZeroShot => "zero_shot",
            ModelKind::Alpha => "alpha",
        })
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero_shot" | "zero-shot" => Ok(ModelKind::ZeroShot),
            "alpha" => Ok(ModelKind::Alpha),
            other => Err(Error::InvalidInput(format!("unknown model kind '{other}'"))),
        }
    }
}

/// Anything a model can read named feature values from.
pub trait FeatureSource {
    fn feature(&self, name: &str) -> Option<f64>;
}

impl FeatureSource for PairFeatureVector {
    fn feature(&self, name: &str) -> Option<f64> {
        self.get_named(name)
    }
}

impl FeatureSource for BTreeMap<String, f64> {
    fn feature(&self, name: &str) -> Option<f64> {
        self.get(name).copied()
    }
}

/// A row with one extra named value layered over it.
pub struct WithExtra<'a, S: ?Sized> {
    pub base: &'a S,
    pub name: &'a str,
    pub value: f64,
}

impl<S: FeatureSource + ?Sized> FeatureSource for WithExtra<'_, S> {
    fn feature(&self, name: &str) -> Option<f64> {
        if name == self.name {
            Some(self.value)
        } else {
            self.base.feature(name)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionModel {
    pub task: String,
    pub kind: ModelKind,
    pub intercept: f64,
    /// Coefficients on min-max scaled inputs, one per selected feature.
    pub coefficients: BTreeMap<String, f64>,
    /// Ranges for the selected features.
    pub scaler: Scaler,
    pub lambda: f64,
    pub k_keep: usize,
    /// Candidate features the fit started from.
    pub feature_names: Vec<String>,
    pub elimination_order: Vec<String>,
    pub metadata: BTreeMap<String, String>,
}

impl RegressionModel {
    /// Linear prediction on scaled inputs.
    pub fn predict<S: FeatureSource + ?Sized>(&self, row: &S) -> Result<f64> {
        let mut total = self.intercept;
        for (name, coef) in &self.coefficients {
            let raw = row
                .feature(name)
                .ok_or_else(|| Error::IncompleteFeatures(format!("missing '{name}'")))?;
            if !raw.is_finite() {
                return Err(Error::IncompleteFeatures(format!("'{name}' is not finite")));
            }
            let range = self
                .scaler
                .range(name)
                .ok_or_else(|| Error::Internal(format!("no scaler range for '{name}'")))?;
            total += coef * range.scale(raw);
        }
        Ok(total)
    }

    pub fn selected_features(&self) -> Vec<String> {
        self.coefficients.keys().cloned().collect()
    }

    /// Coefficients expressed per unit of the raw (unscaled) feature.
    pub fn raw_coefficients(&self) -> BTreeMap<String, f64> {
        self.coefficients
            .iter()
            .map(|(name, &c)| {
                let span = self
                    .scaler
                    .range(name)
                    .map(|r| r.max - r.min)
                    .unwrap_or(1.0);
                let raw = if span > 0.0 { c / span } else { 0.0 };
                (name.clone(), raw)
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        if !path.exists() {
            return Err(Error::MissingFile(path.to_path_buf()));
        }
        Self::from_json(&fs::read_to_string(path)?)
    }
}

/// Scales `rows` of the dataset, runs lasso + RFE, and packages the model.
pub fn fit_on_rows(
    dataset: &Dataset,
    rows: &[usize],
    kind: ModelKind,
    lambda: f64,
    k_keep: usize,
) -> Result<RegressionModel> {
    if rows.is_empty() {
        return Err(Error::EmptyInput("no rows to fit".into()));
    }
    let columns: Vec<Vec<f64>> = (0..dataset.n_features())
        .map(|j| dataset.column(j, rows))
        .collect();
    let y = dataset.targets(rows);
    let (scaled, scaler) = minmax_scale(&dataset.feature_names, &columns)?;
    let result = rfe(&scaled, &dataset.feature_names, &y, lambda, k_keep)?;

    let selected: Vec<String> = result
        .selected
        .iter()
        .map(|&j| dataset.feature_names[j].clone())
        .collect();
    let coefficients = selected
        .iter()
        .cloned()
        .zip(result.fit.coefficients.iter().copied())
        .collect();
    let mut metadata = BTreeMap::new();
    metadata.insert("tool_version".into(), env!("CARGO_PKG_VERSION").into());
    metadata.insert("n_rows".into(), rows.len().to_string());
    metadata.insert("sweeps".into(), result.fit.sweeps.to_string());
    metadata.insert("converged".into(), result.fit.converged.to_string());
    Ok(RegressionModel {
        task: dataset.task.clone(),
        kind,
        intercept: result.fit.intercept,
        coefficients,
        scaler: scaler.restrict(&selected),
        lambda,
        k_keep,
        feature_names: dataset.feature_names.clone(),
        elimination_order: result.elimination_order,
        metadata,
    })
}

pub fn fit_model(
    dataset: &Dataset,
    kind: ModelKind,
    lambda: f64,
    k_keep: usize,
) -> Result<RegressionModel> {
    fit_on_rows(dataset, &dataset.all_rows(), kind, lambda, k_keep)
}
