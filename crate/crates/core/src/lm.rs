//! Span-masking plans and language-model score aggregation.
//!
//! The crate never runs a model. It plans which token spans to mask for each
//! sentence (so an external scorer masks exactly the same spans), and it folds
//! per-sentence scoring records into the two per-language LM metrics: mean
//! masked log-likelihood and span exact-match rate.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub const DEFAULT_DENSITY: f64 = 0.15;
pub const DEFAULT_MEAN_SPAN_LEN: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaskConfig {
    pub density: f64,
    pub mean_span_len: f64,
    pub seed: u64,
}

impl Default for MaskConfig {
    fn default() -> Self {
        Self {
            density: DEFAULT_DENSITY,
            mean_span_len: DEFAULT_MEAN_SPAN_LEN,
            seed: 0,
        }
    }
}

impl MaskConfig {
    fn validate(&self) -> Result<()> {
        if !(self.density > 0.0 && self.density < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "mask density {} outside (0, 1)",
                self.density
            )));
        }
        if self.mean_span_len < 1.0 || !self.mean_span_len.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "mean span length {} must be >= 1",
                self.mean_span_len
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskPlan {
    pub sentence_id: usize,
    pub spans: Vec<Span>,
}

impl MaskPlan {
    pub fn masked_tokens(&self) -> usize {
        self.spans.iter().map(|s| s.len).sum()
    }
}

/// Splits `total` into `parts` positive integers, uniformly over compositions.
fn random_composition(rng: &mut ChaCha8Rng, total: usize, parts: usize) -> Vec<usize> {
    debug_assert!(parts >= 1 && parts <= total);
    let mut cuts: Vec<usize> = sample(rng, total - 1, parts - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(total)) {
        out.push(c - prev);
        prev = c;
    }
    out
}

/// Splits `total` into `parts` non-negative integers, uniformly over weak compositions.
fn random_weak_composition(rng: &mut ChaCha8Rng, total: usize, parts: usize) -> Vec<usize> {
    random_composition(rng, total + parts, parts)
        .into_iter()
        .map(|x| x - 1)
        .collect()
}

/// Plans masked spans for one sentence of `n_tokens` tokens.
///
/// The masked-token budget is `max(1, round(density * n_tokens))`, split into
/// `round(budget / mean_span_len)` spans (at least one) of random lengths.
/// Spans are then placed uniformly at random with at least one unmasked token
/// between consecutive spans. The generator is ChaCha8 seeded with `seed`
/// on stream `sentence_id`, so plans are stable across platforms.
pub fn generate_mask_plan(n_tokens: usize, sentence_id: usize, config: &MaskConfig) -> Result<MaskPlan> {
    config.validate()?;
    if n_tokens == 0 {
        return Err(Error::InvalidParameter("sentence has no tokens".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(sentence_id as u64);

    let noise = ((config.density * n_tokens as f64).round() as usize).clamp(1, n_tokens);
    let keep = n_tokens - noise;
    let n_spans = ((noise as f64 / config.mean_span_len).round() as usize)
        .max(1)
        .min(noise)
        .min(keep + 1);

    let lengths = random_composition(&mut rng, noise, n_spans);
    // gaps[0] before the first span, gaps[n_spans] after the last; inner gaps >= 1
    let mut gaps = random_weak_composition(&mut rng, keep - (n_spans - 1), n_spans + 1);
    for g in gaps.iter_mut().take(n_spans).skip(1) {
        *g += 1;
    }

    let mut spans = Vec::with_capacity(n_spans);
    let mut pos = 0;
    for (i, &len) in lengths.iter().enumerate() {
        pos += gaps[i];
        spans.push(Span { start: pos, len });
        pos += len;
    }
    Ok(MaskPlan { sentence_id, spans })
}

/// Writes plans as CSV `lang,sentence_id,span_index,start,length` with metadata lines.
pub fn write_mask_plans<W: Write>(
    mut w: W,
    plans: &[(String, MaskPlan)],
    config: &MaskConfig,
) -> Result<()> {
    writeln!(w, "# density={}", config.density)?;
    writeln!(w, "# mean_span_len={}", config.mean_span_len)?;
    writeln!(w, "# seed={}", config.seed)?;
    writeln!(w, "lang,sentence_id,span_index,start,length")?;
    for (lang, plan) in plans {
        for (i, s) in plan.spans.iter().enumerate() {
            writeln!(w, "{lang},{},{i},{},{}", plan.sentence_id, s.start, s.len)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct LmRecord {
    pub language: String,
    pub sentence_id: usize,
    /// Sum of masked-token log-probabilities for the sentence.
    pub loglik: f64,
    /// Whether greedy decoding reproduced every token of every masked span.
    pub all_spans_exact: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LmMetrics {
    pub language: String,
    pub lm_l: f64,
    pub lm_em: f64,
    pub n_sentences: usize,
}

/// Per-language mean log-likelihood (averaged per sentence) and exact-match rate.
pub fn aggregate_lm_records(records: &[LmRecord]) -> Result<BTreeMap<String, LmMetrics>> {
    if records.is_empty() {
        return Err(Error::EmptyInput("no LM records".into()));
    }
    let mut by_lang: BTreeMap<&str, Vec<&LmRecord>> = BTreeMap::new();
    for r in records {
        by_lang.entry(r.language.as_str()).or_default().push(r);
    }
    let mut out = BTreeMap::new();
    for (lang, mut recs) in by_lang {
        // fixed summation order
        recs.sort_by(|a, b| {
            a.sentence_id
                .cmp(&b.sentence_id)
                .then(a.loglik.total_cmp(&b.loglik))
        });
        let n = recs.len() as f64;
        let lm_l = recs.iter().map(|r| r.loglik).sum::<f64>() / n;
        let exact = recs.iter().filter(|r| r.all_spans_exact).count() as f64;
        out.insert(
            lang.to_string(),
            LmMetrics {
                language: lang.to_string(),
                lm_l,
                lm_em: exact / n,
                n_sentences: recs.len(),
            },
        );
    }
    Ok(out)
}

/// Parsed LM records file: records, `# key=value` metadata, and warnings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LmRecordFile {
    pub records: Vec<LmRecord>,
    pub metadata: BTreeMap<String, String>,
    pub warnings: Vec<String>,
}

pub const LM_RECORDS_HEADER: &str = "lang,sentence_id,loglik,all_spans_exact";

pub fn parse_lm_records(text: &str, origin: &str) -> Result<LmRecordFile> {
    let mut out = LmRecordFile::default();
    let mut header_seen = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        if let Some(meta) = line.strip_prefix('#') {
            if let Some((k, v)) = meta.split_once('=') {
                out.metadata.insert(k.trim().to_string(), v.trim().to_string());
            }
            continue;
        }
        if !header_seen {
            if line.trim() != LM_RECORDS_HEADER {
                return Err(Error::parse(origin, line_no, "missing LM records header"));
            }
            header_seen = true;
            continue;
        }
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 4 {
            return Err(Error::parse(
                origin,
                line_no,
                format!("expected 4 columns, found {}", cols.len()),
            ));
        }
        let sentence_id = cols[1]
            .parse()
            .map_err(|_| Error::parse(origin, line_no, format!("bad sentence_id '{}'", cols[1])))?;
        let loglik: f64 = cols[2]
            .parse()
            .map_err(|_| Error::parse(origin, line_no, format!("bad loglik '{}'", cols[2])))?;
        if !loglik.is_finite() || loglik > 0.0 {
            return Err(Error::parse(
                origin,
                line_no,
                format!("loglik {loglik} must be finite and <= 0"),
            ));
        }
        let all_spans_exact = match cols[3] {
            "0" => false,
            "1" => true,
            other => {
                return Err(Error::parse(
                    origin,
                    line_no,
                    format!("all_spans_exact must be 0 or 1, got '{other}'"),
                ))
            }
        };
        if cols[0].is_empty() {
            return Err(Error::parse(origin, line_no, "empty language code"));
        }
        out.records.push(LmRecord {
            language: cols[0].to_string(),
            sentence_id,
            loglik,
            all_spans_exact,
        });
    }
    if !header_seen {
        return Err(Error::parse(origin, 1, "missing LM records header"));
    }
    for key in ["density", "mean_span_len", "seed"] {
        if !out.metadata.contains_key(key) {
            out.warnings.push(format!("metadata '{key}' not recorded"));
        }
    }
    let mut seen = BTreeMap::new();
    for r in &out.records {
        if seen.insert((r.language.as_str(), r.sentence_id), ()).is_some() {
            out.warnings.push(format!(
                "duplicate record for {} sentence {}",
                r.language, r.sentence_id
            ));
        }
    }
    Ok(out)
}

pub fn load_lm_records(path: &Path) -> Result<LmRecordFile> {
    if !path.exists() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    parse_lm_records(&fs::read_to_string(path)?, &path.display().to_string())
}

pub fn write_lm_records<W: Write>(
    mut w: W,
    records: &[LmRecord],
    config: &MaskConfig,
) -> Result<()> {
    writeln!(w, "# density={}", config.density)?;
    writeln!(w, "# mean_span_len={}", config.mean_span_len)?;
    writeln!(w, "# seed={}", config.seed)?;
    writeln!(w, "{LM_RECORDS_HEADER}")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{}",
            r.language,
            r.sentence_id,
            r.loglik,
            u8::from(r.all_spans_exact)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(density: f64, mean: f64, seed: u64) -> MaskConfig {
        MaskConfig {
            density,
            mean_span_len: mean,
            seed,
        }
    }

    #[test]
    fn budget_and_span_count() {
        let plan = generate_mask_plan(20, 0, &cfg(0.15, 3.0, 7)).unwrap();
        assert_eq!(plan.masked_tokens(), 3);
        assert_eq!(plan.spans.len(), 1);
        assert_eq!(plan.spans[0].len, 3);
    }

    #[test]
    fn deterministic() {
        let c = cfg(0.15, 3.0, 42);
        for id in 0..20 {
            assert_eq!(
                generate_mask_plan(57, id, &c).unwrap(),
                generate_mask_plan(57, id, &c).unwrap()
            );
        }
    }

    #[test]
    fn at_least_one_token_masked() {
        let plan = generate_mask_plan(1, 0, &cfg(0.15, 3.0, 0)).unwrap();
        assert_eq!(plan.spans, vec![Span { start: 0, len: 1 }]);
        let plan = generate_mask_plan(4, 3, &cfg(0.05, 3.0, 0)).unwrap();
        assert_eq!(plan.masked_tokens(), 1);
    }

    #[test]
    fn rejects_bad_parameters() {
        for d in [0.0, 1.0, -0.1, f64::NAN] {
            assert!(matches!(
                generate_mask_plan(10, 0, &cfg(d, 3.0, 0)),
                Err(Error::InvalidParameter(_))
            ));
        }
        assert!(generate_mask_plan(10, 0, &cfg(0.15, 0.5, 0)).is_err());
        assert!(generate_mask_plan(0, 0, &cfg(0.15, 3.0, 0)).is_err());
    }

    #[test]
    fn different_sentences_get_different_streams() {
        let c = cfg(0.3, 2.0, 1);
        let plans: Vec<_> = (0..10)
            .map(|id| generate_mask_plan(40, id, &c).unwrap().spans)
            .collect();
        assert!(plans.windows(2).any(|w| w[0] != w[1]));
    }

    fn rec(lang: &str, id: usize, loglik: f64, exact: bool) -> LmRecord {
        LmRecord {
            language: lang.into(),
            sentence_id: id,
            loglik,
            all_spans_exact: exact,
        }
    }

    #[test]
    fn aggregate_examples() {
        let m = aggregate_lm_records(&[rec("en", 0, -1.0, true), rec("en", 1, -3.0, false)])
            .unwrap();
        assert_eq!(m["en"].lm_l, -2.0);
        assert_eq!(m["en"].lm_em, 0.5);
        assert_eq!(m["en"].n_sentences, 2);
        let m = aggregate_lm_records(&[rec("fi", 0, -1.0, true), rec("fi", 1, -2.0, true)])
            .unwrap();
        assert_eq!(m["fi"].lm_em, 1.0);
        assert!(matches!(
            aggregate_lm_records(&[]),
            Err(Error::EmptyInput(_))
        ));
    }

    #[test]
    fn records_round_trip_without_warnings() {
        let recs = vec![rec("en", 0, -1.25, true), rec("de", 3, -0.5, false)];
        let mut buf = Vec::new();
        write_lm_records(&mut buf, &recs, &MaskConfig::default()).unwrap();
        let parsed = parse_lm_records(std::str::from_utf8(&buf).unwrap(), "t").unwrap();
        assert_eq!(parsed.records, recs);
        assert!(parsed.warnings.is_empty());
        assert_eq!(parsed.metadata["density"], "0.15");
    }

    #[test]
    fn record_parse_errors() {
        assert!(parse_lm_records("en,0,-1,1\n", "t").is_err());
        let h = format!("{LM_RECORDS_HEADER}\n");
        assert!(parse_lm_records(&format!("{h}en,0,0.5,1\n"), "t").is_err());
        assert!(parse_lm_records(&format!("{h}en,0,-1,2\n"), "t").is_err());
        assert!(parse_lm_records(&format!("{h}en,x,-1,1\n"), "t").is_err());
        let f = parse_lm_records(&format!("{h}en,0,-1,1\n"), "t").unwrap();
        assert_eq!(f.warnings.len(), 3);
    }
}
