//! Per-language corpus statistics and lexical divergence between two corpora.
//!
//! Run with `cargo run --example corpus_stats`.

use xlingual::corpus::{compute_corpus_stats, Corpus, NGRAM_ORDER};
use xlingual::similarity::jsd;

fn main() -> xlingual::Result<()> {
    let en = Corpus::new(
        "en",
        vec![
            "the house is small".into(),
            "the houses are small and old".into(),
            "we live in the old house".into(),
        ],
    )?;
    let fi = Corpus::new(
        "fi",
        vec![
            "talo on pieni".into(),
            "talot ovat pieniä ja vanhoja".into(),
            "asumme vanhassa talossa".into(),
        ],
    )?;

    let en_stats = compute_corpus_stats(&en, NGRAM_ORDER)?;
    let fi_stats = compute_corpus_stats(&fi, NGRAM_ORDER)?;
    for s in [&en_stats, &fi_stats] {
        println!(
            "{}: tokens={} vocab={} ttr={:.3} avg_sent_len={:.2} distinct_trigrams={}",
            s.language,
            s.token_count,
            s.vocab_size,
            s.ttr,
            s.avg_sent_len,
            s.ngram_dist.len()
        );
    }
    let d = jsd(&en_stats.ngram_dist, &fi_stats.ngram_dist)?;
    println!("character trigram JSD(en, fi) = {d:.4}");
    Ok(())
}
