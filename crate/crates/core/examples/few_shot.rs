//! Log-linear few-shot curves: fitting the slope from observations and
//! reading off the gain per tenfold increase in data.
//!
//! Run with `cargo run --example few_shot`.

use xlingual::transfer::{fit_alpha, predict_n_shot, FewShotCurve};

fn main() -> xlingual::Result<()> {
    let (s0, alpha) = (41.0, 2.6);
    let observed: Vec<(u32, f64)> = [10u32, 30, 50, 100, 250]
        .iter()
        .map(|&n| (n, s0 + alpha * (n as f64 + 1.0).ln()))
        .collect();
    let curve = fit_alpha("qa", "en", "sw", &observed, s0)?;
    println!("fitted alpha = {:.6} (true {alpha})", curve.alpha);
    println!("gain per 10x data = {:.3} points", curve.per_decade_gain());
    for n in [0, 10, 100, 1000] {
        println!("  n={n:<5} predicted {:.2}", predict_n_shot(&curve, n)?);
    }

    for gain in [5.0, 7.0] {
        let alpha = FewShotCurve::alpha_for_decade_gain(gain);
        println!("a {gain}-point gain per decade needs alpha = {alpha:.4}");
    }
    Ok(())
}
