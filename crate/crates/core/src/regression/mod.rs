//! Meta-regression over observed transfer results: scaling, correlation
//! analysis, lasso with recursive feature elimination, and
//! leave-one-target-language-out cross-validation.

pub mod cv;
pub mod dataset;
pub mod lasso;
pub mod model;
pub mod rfe;
pub mod scale;
pub mod stats;

pub use cv::{lolo_cv, rmse, target_folds, CvReport, Fold, FoldResult};
pub use dataset::{read_observations, Dataset, DatasetRow, Observation, Target};
pub use lasso::{lasso_fit, lambda_max, LassoFit};
pub use model::{fit_model, fit_on_rows, FeatureSource, ModelKind, RegressionModel, DEFAULT_LAMBDA};
pub use rfe::{rfe, RfeResult};
pub use scale::{minmax_scale, FeatureRange, Scaler};
pub use stats::{correlation_report, pearson, pearson_pvalue, CorrelationReport, NTransform};

/// Default number of features kept by elimination, per task.
pub fn default_k_keep(task: &str) -> Option<usize> {
    match task {
        "qa" => Some(5),
        "ner" => Some(4),
        "xnli" => Some(5),
        _ => None,
    }
}
