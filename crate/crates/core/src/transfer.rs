//! Applying transfer models: zero-shot prediction, few-shot log curves,
//! best-source ranking, and top-1 source accuracy.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::regression::dataset::Observation;
use crate::regression::model::{FeatureSource, ModelKind, RegressionModel, WithExtra};
use crate::regression::scale::Scaler;
use crate::similarity::PairFeatureVector;

/// Valid range of task scores; predictions outside it are flagged, not clipped.
pub const SCORE_RANGE: (f64, f64) = (0.0, 100.0);

/// Sample counts at which curve points are emitted for plotting.
pub const PLOT_GRID: [u32; 6] = [0, 10, 30, 50, 100, 250];

pub const BUILTIN_TASKS: [&str; 3] = ["qa", "ner", "xnli"];

/// Published zero-shot models over `[0, 1]`-scaled inputs.
pub fn builtin_model(task: &str) -> Result<RegressionModel> {
    let (intercept, coefs): (f64, &[(&str, f64)]) = match task {
        "qa" => (
            -65.38,
            &[
                ("s_src", 0.62),
                ("synt", 56.49),
                ("phono", 156.4),
                ("morph", -29.73),
                ("lm_em_tgt", 129.3),
            ],
        ),
        "ner" => (
            -42.8,
            &[
                ("s_src", 1.07),
                ("synt", 14.63),
                ("lm_em_tgt", 68.22),
                ("lex", 4.09),
            ],
        ),
        "xnli" => (
            27.62,
            &[
                ("s_src", 0.64),
                ("phono", 10.12),
                ("morph", -1.2),
                ("lm_em_tgt", 46.87),
                ("lex", 1.2),
            ],
        ),
        other => return Err(Error::UnknownTask(other.to_string())),
    };
    let coefficients: BTreeMap<String, f64> =
        coefs.iter().map(|(n, c)| (n.to_string(), *c)).collect();
    let names: Vec<String> = coefficients.keys().cloned().collect();
    let mut metadata = BTreeMap::new();
    metadata.insert("origin".to_string(), format!("builtin:{task}"));
    metadata.insert("tool_version".to_string(), env!("CARGO_PKG_VERSION").to_string());
    Ok(RegressionModel {
        task: task.to_string(),
        kind: ModelKind::ZeroShot,
        intercept,
        scaler: Scaler::identity(&names),
        lambda: 0.0,
        k_keep: names.len(),
        feature_names: names,
        coefficients,
        elimination_order: Vec::new(),
        metadata,
    })
}

/// Resolves `builtin:<task>` or a path to a saved model.
pub fn resolve_model(spec: &str) -> Result<RegressionModel> {
    match spec.strip_prefix("builtin:") {
        Some(task) => builtin_model(task),
        None => RegressionModel::load(Path::new(spec)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub score: f64,
    pub out_of_range: bool,
}

impl Prediction {
    pub fn new(score: f64) -> Self {
        Self {
            score,
            out_of_range: score < SCORE_RANGE.0 || score > SCORE_RANGE.1,
        }
    }
}

pub fn predict_zero_shot<S: FeatureSource + ?Sized>(
    model: &RegressionModel,
    features: &S,
) -> Result<Prediction> {
    Ok(Prediction::new(model.predict(features)?))
}

/// `S_T(n) = s0 + alpha * ln(n + 1)` for one (task, source, target).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FewShotCurve {
    pub task: String,
    pub source: String,
    pub target: String,
    pub s0: f64,
    pub alpha: f64,
}

impl FewShotCurve {
    pub fn at(&self, n: u32) -> f64 {
        self.s0 + self.alpha * (n as f64 + 1.0).ln()
    }

    /// Gain for a tenfold increase in samples, in the large-`n` limit.
    pub fn per_decade_gain(&self) -> f64 {
        self.alpha * std::f64::consts::LN_10
    }

    /// Slope that yields `gain` points per tenfold increase in samples.
    pub fn alpha_for_decade_gain(gain: f64) -> f64 {
        gain / std::f64::consts::LN_10
    }
}

pub fn predict_n_shot(curve: &FewShotCurve, n: i64) -> Result<f64> {
    let n = u32::try_from(n)
        .map_err(|_| Error::InvalidParameter(format!("sample count {n} must be >= 0")))?;
    Ok(curve.at(n))
}

/// Least-squares slope of `(score - s0)` against `ln(n + 1)` through the
/// origin, over the `n > 0` points.
pub fn fit_alpha(
    task: &str,
    source: &str,
    target: &str,
    points: &[(u32, f64)],
    s0: f64,
) -> Result<FewShotCurve> {
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for &(n, score) in points.iter().filter(|(n, _)| *n > 0) {
        let x = (n as f64 + 1.0).ln();
        sxy += x * (score - s0);
        sxx += x * x;
    }
    if sxx == 0.0 {
        return Err(Error::InvalidInput(format!(
            "no n > 0 observations for {task} {source}->{target}"
        )));
    }
    Ok(FewShotCurve {
        task: task.to_string(),
        source: source.to_string(),
        target: target.to_string(),
        s0,
        alpha: sxy / sxx,
    })
}

/// Fits one curve per (task, source, target) using the observed zero-shot
/// score as `s0`. Triples lacking either a zero-shot or a few-shot point are
/// skipped and returned by name.
pub fn fit_curves(observations: &[Observation]) -> (Vec<FewShotCurve>, Vec<String>) {
    type Key<'a> = (&'a str, &'a str, &'a str);
    let mut groups: BTreeMap<Key<'_>, Vec<(u32, f64)>> = BTreeMap::new();
    for o in observations {
        groups
            .entry((o.task.as_str(), o.source.as_str(), o.target.as_str()))
            .or_default()
            .push((o.n, o.score));
    }
    let mut curves = Vec::new();
    let mut skipped = Vec::new();
    for ((task, source, target), points) in groups {
        let zero: Vec<f64> = points.iter().filter(|p| p.0 == 0).map(|p| p.1).collect();
        if zero.is_empty() {
            skipped.push(format!("{task} {source}->{target}: no zero-shot observation"));
            continue;
        }
        let s0 = zero.iter().sum::<f64>() / zero.len() as f64;
        match fit_alpha(task, source, target, &points, s0) {
            Ok(c) => curves.push(c),
            Err(_) => skipped.push(format!("{task} {source}->{target}: no few-shot observation")),
        }
    }
    (curves, skipped)
}

pub const CURVES_HEADER: &str = "task,source,target,s0,alpha";

pub fn write_curves<W: Write>(w: W, curves: &[FewShotCurve]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    for c in curves {
        wtr.serialize(c)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_curves(path: &Path) -> Result<Vec<FewShotCurve>> {
    if !path.exists() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    let text = fs::read_to_string(path)?;
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in rdr.deserialize::<FewShotCurve>() {
        out.push(rec.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
            Error::parse(path.display().to_string(), line, e.to_string())
        })?);
    }
    Ok(out)
}

/// Where the few-shot slope comes from when ranking at `n > 0`.
#[derive(Debug, Clone, Copy)]
pub enum SlopeSource<'a> {
    None,
    /// Fitted curves keyed by (source, target).
    Curves(&'a BTreeMap<(String, String), FewShotCurve>),
    /// An alpha model reading the features plus the predicted `s0`.
    Model(&'a RegressionModel),
}

impl SlopeSource<'_> {
    fn alpha(&self, row: &PairFeatureVector, s0: f64) -> Option<f64> {
        match self {
            SlopeSource::None => None,
            SlopeSource::Curves(map) => map
                .get(&(row.source.clone(), row.target.clone()))
                .map(|c| c.alpha),
            SlopeSource::Model(m) => m
                .predict(&WithExtra {
                    base: row,
                    name: "s0",
                    value: s0,
                })
                .ok(),
        }
    }
}

/// Zero-shot prediction, composed with a slope when `n > 0`.
pub fn predict_score(
    model: &RegressionModel,
    row: &PairFeatureVector,
    n: u32,
    slope: SlopeSource<'_>,
) -> Result<Prediction> {
    let s0 = model.predict(row)?;
    if n == 0 {
        return Ok(Prediction::new(s0));
    }
    let alpha = slope.alpha(row, s0).ok_or_else(|| {
        Error::IncompleteFeatures(format!("no slope for {}->{}", row.source, row.target))
    })?;
    Ok(Prediction::new(s0 + alpha * (n as f64 + 1.0).ln()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankEntry {
    pub source: String,
    pub score: f64,
    pub out_of_range: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SourceRanking {
    pub task: String,
    pub target: String,
    pub n: u32,
    /// Descending by score; ties by source code.
    pub entries: Vec<RankEntry>,
    /// Candidates skipped because a feature or slope was missing.
    pub skipped: Vec<String>,
}

impl SourceRanking {
    pub fn best(&self) -> Option<&str> {
        self.entries.first().map(|e| e.source.as_str())
    }
}

fn by_score_then_name(a: (&str, f64), b: (&str, f64)) -> std::cmp::Ordering {
    b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0))
}

/// Scores every candidate row whose target matches and sorts them.
pub fn rank_sources(
    model: &RegressionModel,
    target: &str,
    candidates: &[PairFeatureVector],
    n: u32,
    slope: SlopeSource<'_>,
    allow_self: bool,
) -> Result<SourceRanking> {
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    let mut seen = BTreeSet::new();
    for row in candidates.iter().filter(|r| r.target == target) {
        if (!allow_self && row.source == target) || !seen.insert(row.source.as_str()) {
            continue;
        }
        match predict_score(model, row, n, slope) {
            Ok(p) => entries.push(RankEntry {
                source: row.source.clone(),
                score: p.score,
                out_of_range: p.out_of_range,
            }),
            Err(e) => skipped.push(format!("{}: {e}", row.source)),
        }
    }
    if entries.is_empty() {
        return Err(Error::NoScoreableCandidates(target.to_string()));
    }
    entries.sort_by(|a, b| by_score_then_name((&a.source, a.score), (&b.source, b.score)));
    Ok(SourceRanking {
        task: model.task.clone(),
        target: target.to_string(),
        n,
        entries,
        skipped,
    })
}

/// Highest-scoring source; ties go to the lexicographically smallest code.
pub fn best_source<'a>(scores: impl IntoIterator<Item = (&'a str, f64)>) -> Option<String> {
    scores
        .into_iter()
        .min_by(|a, b| by_score_then_name(*a, *b))
        .map(|(s, _)| s.to_string())
}

/// Fraction of targets whose predicted best source matches the observed best.
pub fn a_src(predicted: &BTreeMap<String, String>, gold: &BTreeMap<String, String>) -> Result<f64> {
    if predicted.len() != gold.len() || predicted.keys().any(|k| !gold.contains_key(k)) {
        return Err(Error::KeyMismatch(
            "predicted and gold cover different targets".into(),
        ));
    }
    if gold.is_empty() {
        return Err(Error::EmptyInput("no targets".into()));
    }
    let hits = predicted.iter().filter(|(t, s)| gold[*t] == **s).count();
    Ok(hits as f64 / gold.len() as f64)
}

pub const RANKING_HEADER: &str = "task,target,n,rank,source,predicted_score,out_of_range";

pub fn write_rankings<W: Write>(mut w: W, rankings: &[SourceRanking]) -> Result<()> {
    writeln!(w, "{RANKING_HEADER}")?;
    for r in rankings {
        for (i, e) in r.entries.iter().enumerate() {
            writeln!(
                w,
                "{},{},{},{},{},{:.6},{}",
                r.task,
                r.target,
                r.n,
                i + 1,
                e.source,
                e.score,
                u8::from(e.out_of_range)
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform_row(v: f64) -> BTreeMap<String, f64> {
        crate::similarity::Feature::ALL
            .iter()
            .map(|f| (f.as_str().to_string(), v))
            .collect()
    }

    #[test]
    fn builtin_intercepts_and_sums() {
        let cases = [("qa", -65.38, 247.70), ("ner", -42.8, 45.21), ("xnli", 27.62, 85.25)];
        for (task, zero, one) in cases {
            let m = builtin_model(task).unwrap();
            assert_eq!(m.predict(&uniform_row(0.0)).unwrap(), zero);
            assert!((m.predict(&uniform_row(1.0)).unwrap() - one).abs() < 1e-9);
        }
        assert!(matches!(builtin_model("pos"), Err(Error::UnknownTask(_))));
    }

    #[test]
    fn constant_model_predicts_intercept() {
        let mut m = builtin_model("qa").unwrap();
        m.coefficients.clear();
        assert_eq!(predict_zero_shot(&m, &uniform_row(0.7)).unwrap().score, -65.38);
    }

    #[test]
    fn unselected_feature_does_not_matter() {
        let m = builtin_model("qa").unwrap();
        let mut row = uniform_row(0.5);
        let before = m.predict(&row).unwrap();
        row.insert("emb".into(), 1.0);
        assert_eq!(m.predict(&row).unwrap(), before);
    }

    #[test]
    fn alpha_recovery_and_query() {
        let pts: Vec<(u32, f64)> = [0u32, 10, 30, 50, 100, 250]
            .iter()
            .map(|&n| (n, 40.0 + 5.0 * (n as f64 + 1.0).ln()))
            .collect();
        let c = fit_alpha("qa", "en", "fi", &pts, 40.0).unwrap();
        assert!((c.alpha - 5.0).abs() < 1e-9);
        assert!((predict_n_shot(&c, 99).unwrap() - 63.03).abs() < 0.01);
        assert_eq!(predict_n_shot(&c, 0).unwrap(), 40.0);
        assert!(predict_n_shot(&c, -1).is_err());
        assert!(fit_alpha("qa", "en", "fi", &[(0, 40.0)], 40.0).is_err());
    }

    #[test]
    fn decade_gain() {
        let a = FewShotCurve::alpha_for_decade_gain(7.0);
        assert!((a - 3.040).abs() < 1e-3);
    }

    fn cand(source: &str, s_src: f64) -> PairFeatureVector {
        let mut r = PairFeatureVector::empty("qa", source, "sw");
        r.synt = Some(0.5);
        r.phono = Some(0.5);
        r.morph = Some(0.5);
        r.lm_em_tgt = Some(0.5);
        r.s_src = Some(s_src);
        r
    }

    #[test]
    fn ranking_order_and_ties() {
        let m = builtin_model("qa").unwrap();
        let r = rank_sources(&m, "sw", &[cand("en", 0.2), cand("fi", 0.9)], 0, SlopeSource::None, false)
            .unwrap();
        assert_eq!(r.best(), Some("fi"));
        let r = rank_sources(&m, "sw", &[cand("ru", 0.5), cand("ar", 0.5)], 0, SlopeSource::None, false)
            .unwrap();
        assert_eq!(r.entries[0].source, "ar");
        let r = rank_sources(&m, "sw", &[cand("ru", 0.5)], 0, SlopeSource::None, false).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert!(rank_sources(&m, "sw", &[cand("sw", 0.5)], 0, SlopeSource::None, false).is_err());
        assert!(rank_sources(&m, "sw", &[cand("sw", 0.5)], 0, SlopeSource::None, true).is_ok());
    }

    #[test]
    fn n_shot_ranking_needs_a_slope() {
        let m = builtin_model("qa").unwrap();
        let cands = [cand("en", 0.2)];
        assert!(matches!(
            rank_sources(&m, "sw", &cands, 10, SlopeSource::None, false),
            Err(Error::NoScoreableCandidates(_))
        ));
        let mut curves = BTreeMap::new();
        curves.insert(
            ("en".to_string(), "sw".to_string()),
            FewShotCurve {
                task: "qa".into(),
                source: "en".into(),
                target: "sw".into(),
                s0: 0.0,
                alpha: 2.0,
            },
        );
        let r0 = rank_sources(&m, "sw", &cands, 0, SlopeSource::Curves(&curves), false).unwrap();
        let r = rank_sources(&m, "sw", &cands, 250, SlopeSource::Curves(&curves), false).unwrap();
        assert!((r.entries[0].score - r0.entries[0].score - 2.0 * 251f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn a_src_examples() {
        let m = |pairs: &[(&str, &str)]| -> BTreeMap<String, String> {
            pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
        };
        let gold = m(&[("fi", "en"), ("sw", "ar")]);
        assert_eq!(a_src(&gold, &gold).unwrap(), 1.0);
        assert_eq!(a_src(&m(&[("fi", "ru"), ("sw", "en")]), &gold).unwrap(), 0.0);
        assert!(a_src(&m(&[("fi", "en")]), &gold).is_err());

        let targets: Vec<String> = (0..14).map(|i| format!("t{i:02}")).collect();
        let gold: BTreeMap<String, String> = targets.iter().map(|t| (t.clone(), "en".into())).collect();
        let pred: BTreeMap<String, String> = targets
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), if i < 9 { "en".into() } else { "de".into() }))
            .collect();
        assert!((a_src(&pred, &gold).unwrap() - 0.6429).abs() < 1e-4);
    }

    #[test]
    fn best_source_tie_rule() {
        assert_eq!(best_source([("ru", 1.0), ("ar", 1.0), ("en", 0.5)]), Some("ar".into()));
        assert_eq!(best_source([("ru", 2.0), ("ar", 1.0)]), Some("ru".into()));
        assert_eq!(best_source(std::iter::empty()), None);
    }

    #[test]
    fn out_of_range_flag() {
        assert!(Prediction::new(-65.38).out_of_range);
        assert!(!Prediction::new(50.0).out_of_range);
        assert!(Prediction::new(247.7).out_of_range);
    }
}
