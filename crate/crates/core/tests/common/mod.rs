//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use xlingual::corpus::{compute_corpus_stats, Corpus, CorpusStats, NGRAM_ORDER};
use xlingual::lm::{LmRecord, MaskConfig};
use xlingual::similarity::EmbeddingCentroid;
use xlingual::typology::TypologyDb;

pub const LANGS10: [&str; 10] = ["ar", "bn", "de", "en", "es", "fi", "hi", "id", "ru", "sw"];

pub fn langs(codes: &[&str]) -> Vec<String> {
    codes.iter().map(|s| s.to_string()).collect()
}

/// Deterministic pseudo-text; each language gets its own alphabet slice and
/// word-length profile so lexical statistics differ across languages.
pub fn fixture_sentences(lang: &str, n_sentences: usize) -> Vec<String> {
    let seed = lang.bytes().fold(17u64, |h, b| h.wrapping_mul(31).wrapping_add(b as u64));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabet: Vec<char> = "abcdefghijklmnopqrstuvwxyzäöüçñ".chars().collect();
    let offset = (seed % 12) as usize;
    let letters = &alphabet[offset..offset + 14];
    let vocab: Vec<String> = (0..(40 + (seed % 60) as usize))
        .map(|_| {
            let len = rng.random_range(2..(4 + (seed % 5) as usize));
            (0..len).map(|_| letters[rng.random_range(0..letters.len())]).collect()
        })
        .collect();
    (0..n_sentences)
        .map(|_| {
            let len = rng.random_range(3..(8 + (seed % 7) as usize));
            (0..len)
                .map(|_| vocab[rng.random_range(0..vocab.len())].as_str())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

pub fn write_corpora(dir: &Path, codes: &[&str], n_sentences: usize) {
    fs::create_dir_all(dir).unwrap();
    for code in codes {
        let text = fixture_sentences(code, n_sentences).join("\n") + "\n";
        fs::write(dir.join(format!("{code}.txt")), text).unwrap();
    }
}

pub fn corpus_stats(codes: &[&str], n_sentences: usize) -> BTreeMap<String, CorpusStats> {
    codes
        .iter()
        .map(|c| {
            let corpus = Corpus::new(c, fixture_sentences(c, n_sentences)).unwrap();
            (c.to_string(), compute_corpus_stats(&corpus, NGRAM_ORDER).unwrap())
        })
        .collect()
}

/// Small typology fixture covering `codes`; properties cycle by index.
pub fn fixture_typology_text(codes: &[&str]) -> String {
    let syn = ["SVO", "SOV", "VSO", "GEN_N", "N_GEN", "ADJ_N", "N_ADJ", "PREP", "POSTP"];
    let pho = ["TONE", "LONG_V", "NASAL_V", "CLICK", "UVULAR", "GLOTTAL"];
    let mut out = String::from("# fixture\n");
    for (i, c) in codes.iter().enumerate() {
        for k in 0..4 {
            out.push_str(&format!("{c}\tsyntactic\t{}\n", syn[(i + 2 * k) % syn.len()]));
        }
        for k in 0..3 {
            out.push_str(&format!("{c}\tphonological\t{}\n", pho[(i * 2 + k) % pho.len()]));
        }
    }
    out
}

pub fn fixture_typology(codes: &[&str]) -> TypologyDb {
    TypologyDb::parse(&fixture_typology_text(codes), "fixture").unwrap()
}

pub fn fixture_centroids(codes: &[&str], dim: usize) -> BTreeMap<String, EmbeddingCentroid> {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    codes
        .iter()
        .map(|c| {
            let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
            (
                c.to_string(),
                EmbeddingCentroid {
                    language: c.to_string(),
                    vector: v,
                },
            )
        })
        .collect()
}

pub fn centroid_tsv(centroids: &BTreeMap<String, EmbeddingCentroid>) -> String {
    let mut out = String::from("# model=fixture-encoder\n# pooling=mean\n# k=8\n");
    for (lang, c) in centroids {
        let vals: Vec<String> = c.vector.iter().map(|v| format!("{v}")).collect();
        out.push_str(&format!("{lang}\t{}\n", vals.join(",")));
    }
    out
}

pub fn fixture_lm_records(codes: &[&str], per_lang: usize) -> Vec<LmRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut out = Vec::new();
    for c in codes {
        for id in 0..per_lang {
            out.push(LmRecord {
                language: c.to_string(),
                sentence_id: id,
                loglik: -rng.random_range(0.5..20.0),
                all_spans_exact: rng.random_bool(0.4),
            });
        }
    }
    out
}

pub fn mask_config() -> MaskConfig {
    MaskConfig {
        seed: 7,
        ..MaskConfig::default()
    }
}
