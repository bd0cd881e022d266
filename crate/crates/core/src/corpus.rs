//! Per-language corpus measurements.
//!
//! A [`Corpus`] is one sentence per line of raw UTF-8 text. Tokens are runs of
//! non-whitespace characters; character n-grams are taken over the raw line,
//! whitespace included, with no case folding or punctuation stripping.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Default number of tokens used for statistics. TTR depends on sample size,
/// so every language is measured over the same budget.
pub const DEFAULT_TOKEN_BUDGET: usize = 100_000;

/// Character n-gram order used for the lexical feature.
pub const NGRAM_ORDER: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    language: String,
    sentences: Vec<String>,
    token_budget: Option<usize>,
}

impl Corpus {
    pub fn new(language: &str, sentences: Vec<String>) -> Result<Self> {
        let language = language.trim();
        if language.is_empty() || language.chars().any(|c| c.is_uppercase()) {
            return Err(Error::InvalidInput(format!(
                "language code '{language}' must be non-empty and lowercase"
            )));
        }
        if sentences.is_empty() {
            return Err(Error::EmptyCorpus(language.to_string()));
        }
        Ok(Self {
            language: language.to_string(),
            sentences,
            token_budget: None,
        })
    }

    /// Reads `<dir>/<lang>.txt`, one sentence per line. Blank lines are skipped.
    pub fn load(dir: &Path, language: &str) -> Result<Self> {
        let path = dir.join(format!("{language}.txt"));
        if !path.exists() {
            return Err(Error::MissingLanguage(format!(
                "{language} (no corpus at {})",
                path.display()
            )));
        }
        let text = fs::read_to_string(&path)?;
        let sentences = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(str::to_string)
            .collect();
        Self::new(language, sentences)
    }

    pub fn with_token_budget(mut self, budget: Option<usize>) -> Self {
        self.token_budget = budget;
        self
    }

    pub fn language(&self) -> &str {
        &self.language
    }

    pub fn sentences(&self) -> &[String] {
        &self.sentences
    }

    pub fn token_budget(&self) -> Option<usize> {
        self.token_budget
    }

    /// Leading sentences whose cumulative token count stays within the budget.
    fn budgeted_sentences(&self) -> Vec<&str> {
        let Some(budget) = self.token_budget else {
            return self.sentences.iter().map(String::as_str).collect();
        };
        let mut used = 0usize;
        let mut out = Vec::new();
        for s in &self.sentences {
            used += tokenize(s).len();
            if used > budget {
                break;
            }
            out.push(s.as_str());
        }
        out
    }
}

/// Splits a line on runs of Unicode whitespace.
pub fn tokenize(line: &str) -> Vec<&str> {
    line.split_whitespace().collect()
}

/// All contiguous character windows of length `n` over the raw line.
pub fn char_ngrams(line: &str, n: usize) -> Result<Vec<String>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n-gram order must be >= 1".into()));
    }
    let chars: Vec<char> = line.chars().collect();
    if chars.len() < n {
        return Ok(Vec::new());
    }
    Ok(chars.windows(n).map(|w| w.iter().collect()).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusStats {
    pub language: String,
    /// Relative frequency of every observed character n-gram.
    pub ngram_dist: BTreeMap<String, f64>,
    pub ttr: f64,
    pub vocab_size: usize,
    pub avg_sent_len: f64,
    pub token_count: usize,
}

pub fn compute_corpus_stats(corpus: &Corpus, n: usize) -> Result<CorpusStats> {
    if n == 0 {
        return Err(Error::InvalidParameter("n-gram order must be >= 1".into()));
    }
    let sentences = corpus.budgeted_sentences();

    let mut ngram_counts: BTreeMap<String, u64> = BTreeMap::new();
    let mut types: BTreeMap<&str, ()> = BTreeMap::new();
    let mut token_count = 0usize;
    for s in &sentences {
        for g in char_ngrams(s, n)? {
            *ngram_counts.entry(g).or_default() += 1;
        }
        for tok in tokenize(s) {
            types.insert(tok, ());
            token_count += 1;
        }
    }
    if token_count == 0 {
        return Err(Error::EmptyCorpus(corpus.language.clone()));
    }

    let total: u64 = ngram_counts.values().sum();
    let ngram_dist = ngram_counts
        .into_iter()
        .map(|(g, c)| (g, c as f64 / total as f64))
        .collect();

    Ok(CorpusStats {
        language: corpus.language.clone(),
        ngram_dist,
        ttr: types.len() as f64 / token_count as f64,
        vocab_size: types.len(),
        avg_sent_len: token_count as f64 / sentences.len() as f64,
        token_count,
    })
}
