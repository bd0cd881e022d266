//! Span-masking plans handed to an external scorer, and aggregation of the
//! records it sends back.
//!
//! Run with `cargo run --example mask_plan`.

use xlingual::corpus::tokenize;
use xlingual::lm::{aggregate_lm_records, generate_mask_plan, write_mask_plans, LmRecord, MaskConfig};

fn main() -> xlingual::Result<()> {
    let sentences = [
        "a quick brown fox jumps over the lazy dog near the river bank",
        "language models predict missing spans of text",
        "short one",
    ];
    let cfg = MaskConfig { seed: 42, ..MaskConfig::default() };
    let mut plans = Vec::new();
    for (id, s) in sentences.iter().enumerate() {
        let tokens = tokenize(s);
        let plan = generate_mask_plan(tokens.len(), id, &cfg)?;
        let shown: Vec<String> = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| {
                if plan.spans.iter().any(|sp| i >= sp.start && i < sp.start + sp.len) {
                    "_".repeat(t.chars().count())
                } else {
                    t.to_string()
                }
            })
            .collect();
        println!("{id}: {}", shown.join(" "));
        plans.push(("en".to_string(), plan));
    }
    println!();
    write_mask_plans(std::io::stdout().lock(), &plans, &cfg)?;

    // What a scorer might report for these plans.
    let records: Vec<LmRecord> = [(-7.2, false), (-3.1, true), (-0.9, true)]
        .into_iter()
        .enumerate()
        .map(|(id, (loglik, exact))| LmRecord {
            language: "en".into(),
            sentence_id: id,
            loglik,
            all_spans_exact: exact,
        })
        .collect();
    let m = &aggregate_lm_records(&records)?["en"];
    println!("\nLM_L = {:.3}, LM_EM = {:.3} over {} sentences", m.lm_l, m.lm_em, m.n_sentences);
    Ok(())
}
