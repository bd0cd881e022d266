//! Lasso with recursive feature elimination on a synthetic dataset whose
//! generating model is known.
//!
//! Run with `cargo run --example fit_rfe`.

use xlingual::regression::dataset::{Dataset, Target};
use xlingual::regression::{fit_model, ModelKind};
use xlingual::similarity::Feature;
use xlingual::synthetic::{generate, SyntheticSpec};

fn main() -> xlingual::Result<()> {
    let spec = SyntheticSpec::standard(1, 2.0);
    let data = generate(&spec);
    let names: Vec<String> = Feature::ALL.iter().map(|f| f.as_str().to_string()).collect();
    let ds = Dataset::zero_shot(&spec.task, &data.features, &data.observations, &names, Target::Score)?;

    let model = fit_model(&ds, ModelKind::ZeroShot, 1e-3, 5)?;
    println!("eliminated, first to last: {}", model.elimination_order.join(", "));
    println!("intercept (scaled space): {:.3}", model.intercept);

    let raw = model.raw_coefficients();
    println!("{:<10} {:>10} {:>10} {:>10}", "feature", "scaled", "raw", "true");
    for (name, c) in &model.coefficients {
        let truth = spec
            .coefficients
            .iter()
            .find(|(f, _)| f.as_str() == name)
            .map(|(_, c)| *c)
            .unwrap_or(0.0);
        println!("{name:<10} {c:>10.3} {:>10.3} {truth:>10.3}", raw[name]);
    }
    println!("\nmodel JSON:\n{}", model.to_json()?);
    Ok(())
}
