//! Builds the pairwise feature table for three small corpora and prints it
//! as CSV.
//!
//! Run with `cargo run --example feature_table`.

use std::collections::BTreeMap;

use xlingual::corpus::{compute_corpus_stats, Corpus, NGRAM_ORDER};
use xlingual::similarity::{
    build_feature_table, ordered_pairs, write_feature_table, EmbeddingCentroid, FeatureInputs,
};
use xlingual::typology::TypologyDb;

fn main() -> xlingual::Result<()> {
    let texts = [
        ("en", "the cat sleeps on the warm mat\nthe dog runs in the park\nwe read books at night"),
        ("de", "die katze schläft auf der warmen matte\nder hund läuft im park\nwir lesen nachts bücher"),
        ("fi", "kissa nukkuu lämpimällä matolla\nkoira juoksee puistossa\nluemme kirjoja yöllä"),
    ];
    let mut stats = BTreeMap::new();
    for (lang, text) in texts {
        let corpus = Corpus::new(lang, text.lines().map(String::from).collect())?;
        stats.insert(lang.to_string(), compute_corpus_stats(&corpus, NGRAM_ORDER)?);
    }

    let centroids: BTreeMap<String, EmbeddingCentroid> = [
        ("en", vec![0.9, 0.1, 0.3]),
        ("de", vec![0.8, 0.2, 0.35]),
        ("fi", vec![0.2, 0.9, 0.1]),
    ]
    .into_iter()
    .map(|(l, v)| (l.to_string(), EmbeddingCentroid { language: l.to_string(), vector: v }))
    .collect();

    let typology = TypologyDb::vendored();
    let inputs = FeatureInputs {
        task: "qa",
        stats: &stats,
        typology: Some(&typology),
        centroids: Some(&centroids),
        lm: None,
        source_scores: None,
    };
    let languages: Vec<String> = texts.iter().map(|(l, _)| l.to_string()).collect();
    let rows = build_feature_table(&inputs, &ordered_pairs(&languages, false))?;

    let meta = BTreeMap::from([("seed".to_string(), "0".to_string())]);
    write_feature_table(std::io::stdout().lock(), &rows, &meta)?;
    Ok(())
}
