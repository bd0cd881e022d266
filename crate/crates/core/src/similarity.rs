//! Pairwise language-similarity features and the feature table.
//!
//! Every row of the table describes one ordered (source, target) pair for one
//! task. Lexical and morphological similarity are normalized by a maximum
//! taken over the pair set that is passed in, so the same language pair can
//! score differently when computed against a different set of pairs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use crate::corpus::CorpusStats;
use crate::error::{Error, Result};
use crate::lm::LmMetrics;
use crate::typology::{PropertyClass, TypologyDb};

const DIST_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LangPair {
    pub source: String,
    pub target: String,
}

impl LangPair {
    pub fn new(source: &str, target: &str) -> Self {
        Self {
            source: source.to_string(),
            target: target.to_string(),
        }
    }

    pub fn is_self_pair(&self) -> bool {
        self.source == self.target
    }
}

impl fmt::Display for LangPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.source, self.target)
    }
}

/// All ordered pairs over `languages`, optionally including self-pairs.
pub fn ordered_pairs(languages: &[String], include_self: bool) -> Vec<LangPair> {
    let mut out = Vec::new();
    for s in languages {
        for t in languages {
            if include_self || s != t {
                out.push(LangPair::new(s, t));
            }
        }
    }
    out
}

fn check_distribution<K>(p: &BTreeMap<K, f64>, name: &str) -> Result<()> {
    let mut sum = 0.0;
    for &v in p.values() {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::InvalidDistribution(format!(
                "{name} has a negative or non-finite probability"
            )));
        }
        sum += v;
    }
    if (sum - 1.0).abs() > DIST_TOLERANCE {
        return Err(Error::InvalidDistribution(format!(
            "{name} sums to {sum}, not 1"
        )));
    }
    Ok(())
}

/// Jensen-Shannon divergence with base-2 logarithms, in `[0, 1]`.
pub fn jsd<K: Ord>(p: &BTreeMap<K, f64>, q: &BTreeMap<K, f64>) -> Result<f64> {
    check_distribution(p, "p")?;
    check_distribution(q, "q")?;

    // x log2(x / m), with 0 log 0 = 0
    fn term(x: f64, m: f64) -> f64 {
        if x > 0.0 {
            x * (x / m).log2()
        } else {
            0.0
        }
    }

    let mut total = 0.0;
    for (k, &pv) in p {
        let qv = q.get(k).copied().unwrap_or(0.0);
        let m = 0.5 * (pv + qv);
        total += term(pv, m) + term(qv, m);
    }
    for (k, &qv) in q {
        if !p.contains_key(k) {
            // p(k) = 0, so m = q/2 and the term is q log2 2 = q
            total += term(qv, 0.5 * qv);
        }
    }
    Ok((0.5 * total).clamp(0.0, 1.0))
}

/// `Lex = 1 - jsd / max(jsd)` over the supplied pairs.
pub fn lexical_similarity<K: Ord + Clone>(pair_jsds: &BTreeMap<K, f64>) -> Result<BTreeMap<K, f64>> {
    let max = pair_jsds.values().copied().fold(0.0_f64, f64::max);
    if max <= 0.0 {
        return Err(Error::DegenerateNormalization(
            "every pair has zero divergence".into(),
        ));
    }
    Ok(pair_jsds
        .iter()
        .map(|(k, &d)| (k.clone(), (1.0 - d / max).clamp(0.0, 1.0)))
        .collect())
}

/// `Morph = (TTR_T / TTR_S) / K` with `K` the largest ratio over `pairs`.
pub fn morph_similarity(
    ttrs: &BTreeMap<String, f64>,
    pairs: &[LangPair],
) -> Result<BTreeMap<LangPair, f64>> {
    if pairs.is_empty() {
        return Err(Error::InvalidInput("empty pair set".into()));
    }
    let ttr = |lang: &str| -> Result<f64> {
        match ttrs.get(lang) {
            Some(&v) if v > 0.0 && v.is_finite() => Ok(v),
            Some(&v) => Err(Error::InvalidInput(format!("TTR for '{lang}' is {v}"))),
            None => Err(Error::MissingLanguage(lang.to_string())),
        }
    };
    let mut ratios = BTreeMap::new();
    for p in pairs {
        let r = if p.is_self_pair() {
            1.0
        } else {
            ttr(&p.target)? / ttr(&p.source)?
        };
        ratios.insert(p.clone(), r);
    }
    let k = ratios.values().copied().fold(f64::MIN, f64::max);
    Ok(ratios.into_iter().map(|(p, r)| (p, r / k)).collect())
}

fn checked_ratio(target: f64, source: f64, what: &str) -> Result<f64> {
    if source == 0.0 {
        return Err(Error::DivisionByZero(format!("source {what} is zero")));
    }
    Ok(target / source)
}

/// Target vocabulary size over source vocabulary size.
pub fn vocab_ratio(source: &CorpusStats, target: &CorpusStats) -> Result<f64> {
    checked_ratio(
        target.vocab_size as f64,
        source.vocab_size as f64,
        "vocabulary size",
    )
}

/// Target average sentence length over source average sentence length.
pub fn sentlen_ratio(source: &CorpusStats, target: &CorpusStats) -> Result<f64> {
    checked_ratio(target.avg_sent_len, source.avg_sent_len, "sentence length")
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingCentroid {
    pub language: String,
    pub vector: Vec<f64>,
}

impl EmbeddingCentroid {
    /// Mean of a set of sentence embeddings.
    pub fn from_sentence_embeddings(language: &str, embeddings: &[Vec<f64>]) -> Result<Self> {
        let first = embeddings
            .first()
            .ok_or_else(|| Error::EmptyInput(format!("no embeddings for '{language}'")))?;
        let dim = first.len();
        let mut sum = vec![0.0; dim];
        for e in embeddings {
            if e.len() != dim {
                return Err(Error::LengthMismatch {
                    left: dim,
                    right: e.len(),
                });
            }
            for (acc, v) in sum.iter_mut().zip(e) {
                *acc += v;
            }
        }
        let k = embeddings.len() as f64;
        Ok(Self {
            language: language.to_string(),
            vector: sum.into_iter().map(|v| v / k).collect(),
        })
    }
}

pub fn centroid_cosine(a: &EmbeddingCentroid, b: &EmbeddingCentroid) -> Result<f64> {
    if a.vector.len() != b.vector.len() {
        return Err(Error::LengthMismatch {
            left: a.vector.len(),
            right: b.vector.len(),
        });
    }
    let (mut dot, mut na, mut nb) = (0.0, 0.0, 0.0);
    for (x, y) in a.vector.iter().zip(&b.vector) {
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 {
        return Err(Error::DegenerateEmbedding(a.language.clone()));
    }
    if nb == 0.0 {
        return Err(Error::DegenerateEmbedding(b.language.clone()));
    }
    Ok((dot / (na * nb).sqrt()).clamp(-1.0, 1.0))
}

/// Centroids loaded from a TSV file plus its `# key=value` metadata lines.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CentroidSet {
    pub centroids: BTreeMap<String, EmbeddingCentroid>,
    pub metadata: BTreeMap<String, String>,
}

impl CentroidSet {
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut set = CentroidSet::default();
        let mut dim: Option<usize> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            if let Some(meta) = line.strip_prefix('#') {
                if let Some((k, v)) = meta.split_once('=') {
                    set.metadata.insert(k.trim().to_string(), v.trim().to_string());
                }
                continue;
            }
            let (lang, values) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(origin, line_no, "expected `lang<TAB>v1,...,vd`"))?;
            let lang = lang.trim();
            if lang.is_empty() {
                return Err(Error::parse(origin, line_no, "empty language code"));
            }
            let vector = values
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<f64>()
                        .ok()
                        .filter(|x| x.is_finite())
                        .ok_or_else(|| {
                            Error::parse(origin, line_no, format!("bad vector entry '{v}'"))
                        })
                })
                .collect::<Result<Vec<f64>>>()?;
            match dim {
                None => dim = Some(vector.len()),
                Some(d) if d != vector.len() => {
                    return Err(Error::parse(
                        origin,
                        line_no,
                        format!("dimension {} differs from {d}", vector.len()),
                    ))
                }
                _ => {}
            }
            if set.centroids.contains_key(lang) {
                return Err(Error::parse(origin, line_no, format!("duplicate language '{lang}'")));
            }
            set.centroids.insert(
                lang.to_string(),
                EmbeddingCentroid {
                    language: lang.to_string(),
                    vector,
                },
            );
        }
        Ok(set)
    }

    pub fn load(path: &Path) -> Result<Self> {
        if !path.exists() {
            return Err(Error::MissingFile(path.to_path_buf()));
        }
        Self::parse(&fs::read_to_string(path)?, &path.display().to_string())
    }
}

/// Column identifiers of the feature table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Feature {
    Lex,
    Morph,
    Phono,
    Synt,
    Emb,
    VocabRatio,
    SentLenRatio,
    LmLogLikSource,
    LmLogLikTarget,
    LmExactMatchSource,
    LmExactMatchTarget,
    SourceScore,
}

impl Feature {
    pub const ALL: [Feature; 12] = [
        Feature::Lex,
        Feature::Morph,
        Feature::Phono,
        Feature::Synt,
        Feature::Emb,
        Feature::VocabRatio,
        Feature::SentLenRatio,
        Feature::LmLogLikSource,
        Feature::LmLogLikTarget,
        Feature::LmExactMatchSource,
        Feature::LmExactMatchTarget,
        Feature::SourceScore,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Feature::Lex => "lex",
            Feature::Morph => "morph",
            Feature::Phono => "phono",
            Feature::Synt => "synt",
            Feature::Emb => "emb",
            Feature::VocabRatio => "v_r",
            Feature::SentLenRatio => "sent_len",
            Feature::LmLogLikSource => "lm_l_src",
            Feature::LmLogLikTarget => "lm_l_tgt",
            Feature::LmExactMatchSource => "lm_em_src",
            Feature::LmExactMatchTarget => "lm_em_tgt",
            Feature::SourceScore => "s_src",
        }
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Feature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Feature::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown feature '{s}'")))
    }
}

/// One (task, source, target) row. Optional features are `None` when their
/// inputs were not supplied; they are never imputed.
#[derive(Debug, Clone, PartialEq)]
pub struct PairFeatureVector {
    pub task: String,
    pub source: String,
    pub target: String,
    pub lex: Option<f64>,
    pub morph: Option<f64>,
    pub phono: Option<f64>,
    pub synt: Option<f64>,
    pub emb: Option<f64>,
    pub v_r: Option<f64>,
    pub sent_len: Option<f64>,
    pub lm_l_src: Option<f64>,
    pub lm_l_tgt: Option<f64>,
    pub lm_em_src: Option<f64>,
    pub lm_em_tgt: Option<f64>,
    pub s_src: Option<f64>,
}

impl PairFeatureVector {
    /// A row with every feature absent.
    pub fn empty(task: &str, source: &str, target: &str) -> Self {
        Self {
            task: task.to_string(),
            source: source.to_string(),
            target: target.to_string(),
            lex: None,
            morph: None,
            phono: None,
            synt: None,
            emb: None,
            v_r: None,
            sent_len: None,
            lm_l_src: None,
            lm_l_tgt: None,
            lm_em_src: None,
            lm_em_tgt: None,
            s_src: None,
        }
    }

    pub fn get(&self, f: Feature) -> Option<f64> {
        match f {
            Feature::Lex => self.lex,
            Feature::Morph => self.morph,
            Feature::Phono => self.phono,
            Feature::Synt => self.synt,
            Feature::Emb => self.emb,
            Feature::VocabRatio => self.v_r,
            Feature::SentLenRatio => self.sent_len,
            Feature::LmLogLikSource => self.lm_l_src,
            Feature::LmLogLikTarget => self.lm_l_tgt,
            Feature::LmExactMatchSource => self.lm_em_src,
            Feature::LmExactMatchTarget => self.lm_em_tgt,
            Feature::SourceScore => self.s_src,
        }
    }

    pub fn set(&mut self, f: Feature, value: Option<f64>) {
        let slot = match f {
            Feature::Lex => &mut self.lex,
            Feature::Morph => &mut self.morph,
            Feature::Phono => &mut self.phono,
            Feature::Synt => &mut self.synt,
            Feature::Emb => &mut self.emb,
            Feature::VocabRatio => &mut self.v_r,
            Feature::SentLenRatio => &mut self.sent_len,
            Feature::LmLogLikSource => &mut self.lm_l_src,
            Feature::LmLogLikTarget => &mut self.lm_l_tgt,
            Feature::LmExactMatchSource => &mut self.lm_em_src,
            Feature::LmExactMatchTarget => &mut self.lm_em_tgt,
            Feature::SourceScore => &mut self.s_src,
        };
        *slot = value;
    }

    /// Value of a feature by column name.
    pub fn get_named(&self, name: &str) -> Option<f64> {
        name.parse::<Feature>().ok().and_then(|f| self.get(f))
    }

    pub fn pair(&self) -> LangPair {
        LangPair::new(&self.source, &self.target)
    }
}

/// Inputs to [`build_feature_table`]. Everything except corpus stats is optional.
#[derive(Debug, Clone, Copy)]
pub struct FeatureInputs<'a> {
    pub task: &'a str,
    pub stats: &'a BTreeMap<String, CorpusStats>,
    pub typology: Option<&'a TypologyDb>,
    pub centroids: Option<&'a BTreeMap<String, EmbeddingCentroid>>,
    pub lm: Option<&'a BTreeMap<String, LmMetrics>>,
    pub source_scores: Option<&'a BTreeMap<String, f64>>,
}

pub fn build_feature_table(
    inputs: &FeatureInputs<'_>,
    pairs: &[LangPair],
) -> Result<Vec<PairFeatureVector>> {
    if pairs.is_empty() {
        return Err(Error::InvalidInput("empty pair set".into()));
    }
    let unique: BTreeSet<LangPair> = pairs.iter().cloned().collect();
    let stats = |lang: &str| {
        inputs
            .stats
            .get(lang)
            .ok_or_else(|| Error::MissingLanguage(lang.to_string()))
    };
    for p in &unique {
        stats(&p.source)?;
        stats(&p.target)?;
    }

    let mut jsds = BTreeMap::new();
    for p in &unique {
        let d = if p.is_self_pair() {
            0.0
        } else {
            jsd(&stats(&p.source)?.ngram_dist, &stats(&p.target)?.ngram_dist)?
        };
        jsds.insert(p.clone(), d);
    }
    let lex = lexical_similarity(&jsds)?;

    let ttrs: BTreeMap<String, f64> = inputs
        .stats
        .iter()
        .map(|(l, s)| (l.clone(), s.ttr))
        .collect();
    let unique_vec: Vec<LangPair> = unique.iter().cloned().collect();
    let morph = morph_similarity(&ttrs, &unique_vec)?;

    let mut rows = Vec::with_capacity(unique.len());
    for p in &unique {
        let (src, tgt) = (stats(&p.source)?, stats(&p.target)?);
        let mut row = PairFeatureVector::empty(inputs.task, &p.source, &p.target);
        row.lex = Some(lex[p]);
        row.morph = Some(morph[p]);
        row.v_r = Some(vocab_ratio(src, tgt)?);
        row.sent_len = Some(sentlen_ratio(src, tgt)?);
        if let Some(db) = inputs.typology {
            row.phono = db.similarity(&p.source, &p.target, PropertyClass::Phonological);
            row.synt = db.similarity(&p.source, &p.target, PropertyClass::Syntactic);
        }
        if let Some(c) = inputs.centroids {
            if let (Some(a), Some(b)) = (c.get(&p.source), c.get(&p.target)) {
                row.emb = Some(centroid_cosine(a, b)?);
            }
        }
        if let Some(lm) = inputs.lm {
            if let Some(m) = lm.get(&p.source) {
                row.lm_l_src = Some(m.lm_l);
                row.lm_em_src = Some(m.lm_em);
            }
            if let Some(m) = lm.get(&p.target) {
                row.lm_l_tgt = Some(m.lm_l);
                row.lm_em_tgt = Some(m.lm_em);
            }
        }
        if let Some(scores) = inputs.source_scores {
            row.s_src = scores.get(&p.source).copied();
        }
        rows.push(row);
    }
    Ok(rows)
}

pub const FEATURE_TABLE_HEADER: &str =
    "task,source,target,lex,morph,phono,synt,emb,v_r,sent_len,lm_l_src,lm_l_tgt,lm_em_src,lm_em_tgt,s_src";

/// Writes the feature table CSV. Metadata entries become leading `# key=value` lines.
pub fn write_feature_table<W: Write>(
    mut w: W,
    rows: &[PairFeatureVector],
    metadata: &BTreeMap<String, String>,
) -> Result<()> {
    for (k, v) in metadata {
        writeln!(w, "# {k}={v}")?;
    }
    writeln!(w, "{FEATURE_TABLE_HEADER}")?;
    for r in rows {
        write!(w, "{},{},{}", r.task, r.source, r.target)?;
        for f in Feature::ALL {
            match r.get(f) {
                Some(v) => write!(w, ",{v:.6}")?,
                None => write!(w, ",")?,
            }
        }
        writeln!(w)?;
    }
    Ok(())
}

pub fn read_feature_table(path: &Path) -> Result<Vec<PairFeatureVector>> {
    if !path.exists() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    parse_feature_table(&fs::read_to_string(path)?, &path.display().to_string())
}

pub fn parse_feature_table(text: &str, origin: &str) -> Result<Vec<PairFeatureVector>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = rdr.headers()?.clone();
    let expected: Vec<&str> = FEATURE_TABLE_HEADER.split(',').collect();
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(Error::parse(origin, 1, "unexpected feature table header"));
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map(|p| p.line() as usize).unwrap_or(0);
        let mut row = PairFeatureVector::empty(&rec[0], &rec[1], &rec[2]);
        for (i, f) in Feature::ALL.into_iter().enumerate() {
            let cell = rec[i + 3].trim();
            if cell.is_empty() {
                continue;
            }
            let v: f64 = cell
                .parse()
                .map_err(|_| Error::parse(origin, line, format!("bad value '{cell}' for {f}")))?;
            row.set(f, Some(v));
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(items: &[(&str, f64)]) -> BTreeMap<String, f64> {
        items.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn jsd_examples() {
        let p = dist(&[("a", 0.5), ("b", 0.5)]);
        assert_eq!(jsd(&p, &p).unwrap(), 0.0);
        assert_eq!(jsd(&dist(&[("a", 1.0)]), &dist(&[("b", 1.0)])).unwrap(), 1.0);
        let d = jsd(&p, &dist(&[("a", 1.0)])).unwrap();
        assert!((d - 0.31128).abs() < 1e-4, "{d}");
    }

    #[test]
    fn jsd_rejects_unnormalized() {
        let bad = dist(&[("a", 0.5)]);
        assert!(matches!(
            jsd(&bad, &dist(&[("a", 1.0)])),
            Err(Error::InvalidDistribution(_))
        ));
        let neg = dist(&[("a", 1.5), ("b", -0.5)]);
        assert!(jsd(&neg, &neg).is_err());
    }

    #[test]
    fn lex_examples() {
        let out = lexical_similarity(&dist(&[("p1", 0.2), ("p2", 0.4)])).unwrap();
        assert!((out["p1"] - 0.5).abs() < 1e-15);
        assert_eq!(out["p2"], 0.0);
        let out = lexical_similarity(&dist(&[("self", 0.0), ("p", 0.7)])).unwrap();
        assert_eq!(out["self"], 1.0);
        let out = lexical_similarity(&dist(&[("p1", 0.3)])).unwrap();
        assert_eq!(out["p1"], 0.0);
        assert!(matches!(
            lexical_similarity(&dist(&[("a", 0.0), ("b", 0.0)])),
            Err(Error::DegenerateNormalization(_))
        ));
    }

    #[test]
    fn morph_examples() {
        let ttrs = dist(&[("a", 0.1), ("b", 0.2), ("c", 0.4)]);
        // a->b ratio 2, a->c ratio 4
        let pairs = vec![LangPair::new("a", "b"), LangPair::new("a", "c")];
        let m = morph_similarity(&ttrs, &pairs).unwrap();
        assert!((m[&pairs[0]] - 0.5).abs() < 1e-15);
        assert_eq!(m[&pairs[1]], 1.0);

        let flat = dist(&[("a", 0.3), ("b", 0.3)]);
        let pairs = ordered_pairs(&["a".into(), "b".into()], true);
        assert!(morph_similarity(&flat, &pairs)
            .unwrap()
            .values()
            .all(|&v| v == 1.0));

        let m = morph_similarity(&ttrs, &[LangPair::new("a", "a")]).unwrap();
        assert_eq!(m.values().next(), Some(&1.0));
        assert!(matches!(
            morph_similarity(&ttrs, &[]),
            Err(Error::InvalidInput(_))
        ));
    }

    fn stats(vocab: usize, avg: f64) -> CorpusStats {
        CorpusStats {
            language: "x".into(),
            ngram_dist: dist(&[("abc", 1.0)]),
            ttr: 0.5,
            vocab_size: vocab,
            avg_sent_len: avg,
            token_count: 10,
        }
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(vocab_ratio(&stats(50, 1.0), &stats(100, 1.0)).unwrap(), 2.0);
        let s = stats(7, 3.0);
        assert_eq!(vocab_ratio(&s, &s).unwrap(), 1.0);
        assert_eq!(sentlen_ratio(&s, &s).unwrap(), 1.0);
        assert_eq!(sentlen_ratio(&stats(1, 10.0), &stats(1, 20.0)).unwrap(), 2.0);
        assert!(matches!(
            vocab_ratio(&stats(0, 1.0), &stats(3, 1.0)),
            Err(Error::DivisionByZero(_))
        ));
    }

    fn centroid(v: &[f64]) -> EmbeddingCentroid {
        EmbeddingCentroid {
            language: "x".into(),
            vector: v.to_vec(),
        }
    }

    #[test]
    fn cosine_examples() {
        let a = centroid(&[0.3, -1.2, 4.0]);
        assert_eq!(centroid_cosine(&a, &a).unwrap(), 1.0);
        assert_eq!(
            centroid_cosine(&centroid(&[1.0, 0.0]), &centroid(&[0.0, 1.0])).unwrap(),
            0.0
        );
        let mean =
            EmbeddingCentroid::from_sentence_embeddings("x", &[vec![1.0, 0.0], vec![0.0, 1.0]])
                .unwrap();
        let c = centroid_cosine(&mean, &centroid(&[1.0, 0.0])).unwrap();
        assert!((c - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(matches!(
            centroid_cosine(&centroid(&[0.0, 0.0]), &a),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            centroid_cosine(&centroid(&[0.0, 0.0]), &centroid(&[1.0, 0.0])),
            Err(Error::DegenerateEmbedding(_))
        ));
    }

    #[test]
    fn centroid_file_parsing() {
        let set = CentroidSet::parse("# k=500\nen\t1,0\nde\t0.5, 0.5\n", "t").unwrap();
        assert_eq!(set.metadata["k"], "500");
        assert_eq!(set.centroids["de"].vector, vec![0.5, 0.5]);
        assert!(CentroidSet::parse("en\t1,0\nde\t1\n", "t").is_err());
        assert!(CentroidSet::parse("en\t1,nan\n", "t").is_err());
        assert!(CentroidSet::parse("en 1,0\n", "t").is_err());
    }

    #[test]
    fn feature_table_csv_round_trip() {
        let mut row = PairFeatureVector::empty("qa", "en", "fi");
        row.lex = Some(0.25);
        row.s_src = Some(71.5);
        let mut buf = Vec::new();
        write_feature_table(&mut buf, &[row.clone()], &BTreeMap::new()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().nth(1).unwrap(),
            "qa,en,fi,0.250000,,,,,,,,,,,71.500000"
        );
        assert_eq!(parse_feature_table(&text, "t").unwrap(), vec![row]);
    }
}
