//! Bivariate correlations between features and the cross-lingual gap, plus
//! transforms of the sample count against the score.
//!
//! Run with `cargo run --example correlation`.

use xlingual::regression::dataset::{Dataset, Target};
use xlingual::regression::stats::{correlation_report, NTransform};
use xlingual::similarity::Feature;
use xlingual::synthetic::{generate, SyntheticSpec};

fn main() -> xlingual::Result<()> {
    let data = generate(&SyntheticSpec::standard(7, 2.0));
    let names: Vec<String> = Feature::ALL
        .iter()
        .filter(|f| **f != Feature::SourceScore)
        .map(|f| f.as_str().to_string())
        .collect();
    let ds = Dataset::zero_shot("qa", &data.features, &data.observations, &names, Target::Gap)?;
    let report = correlation_report(&ds, &data.observations, &NTransform::ALL)?;

    println!("{:<12} {:<12} {:>8} {:>9} {:>5}", "block", "variable", "r x100", "p", "n");
    for r in &report.rows {
        println!(
            "{:<12} {:<12} {:>8} {:>9.4} {:>5}",
            r.block.name(),
            r.variable,
            r.display(),
            r.p_value,
            r.n_obs
        );
    }
    for w in &report.warnings {
        println!("omitted: {w}");
    }
    Ok(())
}
