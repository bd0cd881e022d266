//! Leave-one-target-language-out cross-validation.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::regression::dataset::Dataset;
use crate::regression::model::{fit_on_rows, ModelKind, RegressionModel};
use crate::transfer::{a_src, best_source};

/// Row indices of one fold.
#[derive(Debug, Clone, PartialEq)]
pub struct Fold {
    pub target: String,
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// One fold per distinct target language.
pub fn target_folds(dataset: &Dataset) -> Result<Vec<Fold>> {
    let targets: BTreeSet<&str> = dataset.rows.iter().map(|r| r.target.as_str()).collect();
    if targets.len() < 2 {
        return Err(Error::DegenerateSplit(format!(
            "need at least 2 target languages, found {}",
            targets.len()
        )));
    }
    let mut folds = Vec::with_capacity(targets.len());
    for t in targets {
        let (test, train): (Vec<usize>, Vec<usize>) =
            dataset.all_rows().into_iter().partition(|&i| dataset.rows[i].target == t);
        if train.is_empty() {
            return Err(Error::DegenerateSplit(format!("fold '{t}' has no training rows")));
        }
        folds.push(Fold {
            target: t.to_string(),
            train,
            test,
        });
    }
    Ok(folds)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoldPrediction {
    pub source: String,
    pub target: String,
    pub predicted: f64,
    pub observed: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoldResult {
    pub target: String,
    pub rmse: f64,
    pub n_train: usize,
    pub n_test: usize,
    pub model: RegressionModel,
    pub predictions: Vec<FoldPrediction>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvReport {
    pub folds: Vec<FoldResult>,
    /// Unweighted mean of the per-fold RMSEs.
    pub mean_rmse: f64,
}

impl CvReport {
    /// Top-1 source accuracy from held-out predictions: per target, does the
    /// source with the highest prediction match the one with the highest
    /// observed score?
    pub fn a_src(&self) -> Result<f64> {
        let mut predicted = BTreeMap::new();
        let mut gold = BTreeMap::new();
        for f in &self.folds {
            let p = best_source(f.predictions.iter().map(|p| (p.source.as_str(), p.predicted)));
            let g = best_source(f.predictions.iter().map(|p| (p.source.as_str(), p.observed)));
            if let (Some(p), Some(g)) = (p, g) {
                predicted.insert(f.target.clone(), p);
                gold.insert(f.target.clone(), g);
            }
        }
        a_src(&predicted, &gold)
    }
}

pub fn rmse(pred: &[f64], gold: &[f64]) -> Result<f64> {
    if pred.len() != gold.len() {
        return Err(Error::LengthMismatch {
            left: pred.len(),
            right: gold.len(),
        });
    }
    if pred.is_empty() {
        return Err(Error::EmptyInput("rmse of empty vectors".into()));
    }
    let mse = pred
        .iter()
        .zip(gold)
        .map(|(p, g)| (p - g) * (p - g))
        .sum::<f64>()
        / pred.len() as f64;
    Ok(mse.sqrt())
}

/// Fits on all folds but one (scaler included) and scores the held-out fold.
pub fn lolo_cv(dataset: &Dataset, kind: ModelKind, lambda: f64, k_keep: usize) -> Result<CvReport> {
    let folds = target_folds(dataset)?;
    let mut results = Vec::with_capacity(folds.len());
    for fold in folds {
        let model = fit_on_rows(dataset, &fold.train, kind, lambda, k_keep)?;
        let mut predictions = Vec::with_capacity(fold.test.len());
        for &i in &fold.test {
            let row = &dataset.rows[i];
            let values: BTreeMap<String, f64> = dataset
                .feature_names
                .iter()
                .cloned()
                .zip(row.values.iter().copied())
                .collect();
            predictions.push(FoldPrediction {
                source: row.source.clone(),
                target: row.target.clone(),
                predicted: model.predict(&values)?,
                observed: row.y,
            });
        }
        let pred: Vec<f64> = predictions.iter().map(|p| p.predicted).collect();
        let gold: Vec<f64> = predictions.iter().map(|p| p.observed).collect();
        results.push(FoldResult {
            target: fold.target,
            rmse: rmse(&pred, &gold)?,
            n_train: fold.train.len(),
            n_test: fold.test.len(),
            model,
            predictions,
        });
    }
    let mean_rmse = results.iter().map(|f| f.rmse).sum::<f64>() / results.len() as f64;
    Ok(CvReport {
        folds: results,
        mean_rmse,
    })
}
