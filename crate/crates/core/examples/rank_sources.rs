//! Ranks candidate source languages for a target with the built-in models.
//!
//! Run with `cargo run --example rank_sources`.

use xlingual::similarity::PairFeatureVector;
use xlingual::transfer::{builtin_model, rank_sources, SlopeSource, BUILTIN_TASKS};

fn candidate(source: &str, s_src: f64, synt: f64, phono: f64, morph: f64, lex: f64) -> PairFeatureVector {
    let mut r = PairFeatureVector::empty("any", source, "fi");
    r.s_src = Some(s_src);
    r.synt = Some(synt);
    r.phono = Some(phono);
    r.morph = Some(morph);
    r.lex = Some(lex);
    r.lm_em_tgt = Some(0.31);
    r
}

fn main() -> xlingual::Result<()> {
    let candidates = [
        candidate("en", 0.82, 0.48, 0.41, 0.35, 0.22),
        candidate("et", 0.71, 0.79, 0.66, 0.92, 0.71),
        candidate("ru", 0.76, 0.55, 0.38, 0.74, 0.18),
        candidate("de", 0.78, 0.52, 0.45, 0.51, 0.27),
    ];
    for task in BUILTIN_TASKS {
        let model = builtin_model(task)?;
        let ranking = rank_sources(&model, "fi", &candidates, 0, SlopeSource::None, false)?;
        println!("{task}: target fi");
        for (i, e) in ranking.entries.iter().enumerate() {
            let flag = if e.out_of_range { "  (outside 0-100)" } else { "" };
            println!("  {}. {:<3} {:>8.2}{flag}", i + 1, e.source, e.score);
        }
    }
    Ok(())
}
