//! Leave-one-target-language-out cross-validation: per-fold RMSE and top-1
//! source accuracy.
//!
//! Run with `cargo run --example cross_validation`.

use xlingual::regression::dataset::{Dataset, Target};
use xlingual::regression::{lolo_cv, ModelKind};
use xlingual::similarity::Feature;
use xlingual::synthetic::{generate, SyntheticSpec};

fn main() -> xlingual::Result<()> {
    let data = generate(&SyntheticSpec::standard(2, 2.0));
    let names: Vec<String> = Feature::ALL.iter().map(|f| f.as_str().to_string()).collect();
    let ds = Dataset::zero_shot("qa", &data.features, &data.observations, &names, Target::Score)?;

    let report = lolo_cv(&ds, ModelKind::ZeroShot, 1e-3, 5)?;
    println!("{:<6} {:>6} {:>5} {:>8}  selected", "target", "train", "test", "rmse");
    for f in &report.folds {
        println!(
            "{:<6} {:>6} {:>5} {:>8.3}  {}",
            f.target,
            f.n_train,
            f.n_test,
            f.rmse,
            f.model.selected_features().join(",")
        );
    }
    println!("mean RMSE {:.3}", report.mean_rmse);
    println!("A_src {:.1}%", 100.0 * report.a_src()?);
    Ok(())
}
