use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::similarity::PairFeatureVector;
use crate::transfer::FewShotCurve;

/// One measured transfer result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub task: String,
    pub source: String,
    pub target: String,
    /// Target-language fine-tuning samples.
    pub n: u32,
    pub score: f64,
    /// In-language score of the source.
    pub source_score: Option<f64>,
}

pub const OBSERVATIONS_HEADER: &str = "task,source,target,n,score,source_score";

pub fn read_observations(path: &Path) -> Result<Vec<Observation>> {
    if !path.exists() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    parse_observations(&fs::read_to_string(path)?, &path.display().to_string())
}

pub fn parse_observations(text: &str, origin: &str) -> Result<Vec<Observation>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if headers.join(",") != OBSERVATIONS_HEADER {
        return Err(Error::parse(origin, 1, "unexpected observations header"));
    }
    let mut out = Vec::new();
    for rec in rdr.deserialize::<Observation>() {
        let obs = rec.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
            Error::parse(origin, line, e.to_string())
        })?;
        if !obs.score.is_finite() {
            return Err(Error::parse(origin, 0, "non-finite score"));
        }
        out.push(obs);
    }
    Ok(out)
}

pub fn write_observations<W: Write>(w: W, observations: &[Observation]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    for o in observations {
        wtr.serialize(o)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Per-source in-language scores collected from observations.
pub fn source_scores(observations: &[Observation], task: &str) -> BTreeMap<String, f64> {
    let mut acc: BTreeMap<String, (f64, usize)> = BTreeMap::new();
    for o in observations.iter().filter(|o| o.task == task) {
        if let Some(s) = o.source_score {
            let e = acc.entry(o.source.clone()).or_default();
            e.0 += s;
            e.1 += 1;
        }
    }
    acc.into_iter()
        .map(|(k, (sum, n))| (k, sum / n as f64))
        .collect()
}

/// What the regression target `y` holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// Zero-shot score S_T.
    Score,
    /// Cross-lingual gap S_T - S_S.
    Gap,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetRow {
    pub source: String,
    pub target: String,
    pub n: u32,
    /// Aligned with `Dataset::feature_names`.
    pub values: Vec<f64>,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub task: String,
    pub feature_names: Vec<String>,
    pub rows: Vec<DatasetRow>,
    /// Rows dropped at assembly because a feature or the target was absent.
    pub excluded: usize,
}

impl Dataset {
    pub fn new(task: &str, feature_names: Vec<String>) -> Self {
        Self {
            task: task.to_string(),
            feature_names,
            rows: Vec::new(),
            excluded: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    /// Column `j` over the given row indices.
    pub fn column(&self, j: usize, rows: &[usize]) -> Vec<f64> {
        rows.iter().map(|&i| self.rows[i].values[j]).collect()
    }

    pub fn targets(&self, rows: &[usize]) -> Vec<f64> {
        rows.iter().map(|&i| self.rows[i].y).collect()
    }

    pub fn all_rows(&self) -> Vec<usize> {
        (0..self.rows.len()).collect()
    }

    /// Joins zero-shot observations (`n == 0`) with feature rows.
    ///
    /// `s_src` falls back to the observation's `source_score` when the
    /// feature table leaves it empty.
    pub fn zero_shot(
        task: &str,
        features: &[PairFeatureVector],
        observations: &[Observation],
        feature_names: &[String],
        target: Target,
    ) -> Result<Self> {
        let index = feature_index(features, task);
        let mut ds = Dataset::new(task, feature_names.to_vec());
        for o in observations.iter().filter(|o| o.task == task && o.n == 0) {
            let Some(row) = index.get(&(o.source.as_str(), o.target.as_str())) else {
                ds.excluded += 1;
                continue;
            };
            let source_score = row.s_src.or(o.source_score);
            let y = match target {
                Target::Score => Some(o.score),
                Target::Gap => source_score.map(|s| o.score - s),
            };
            let values = feature_names
                .iter()
                .map(|name| {
                    if name == "s_src" {
                        source_score
                    } else {
                        row.get_named(name)
                    }
                })
                .collect::<Option<Vec<f64>>>();
            match (values, y) {
                (Some(values), Some(y)) => ds.rows.push(DatasetRow {
                    source: o.source.clone(),
                    target: o.target.clone(),
                    n: 0,
                    values,
                    y,
                }),
                _ => ds.excluded += 1,
            }
        }
        ds.sort();
        Ok(ds)
    }

    /// Joins few-shot curves with feature rows; `y` is the curve slope.
    /// The name `s0` refers to the curve's zero-shot score.
    pub fn alpha(
        task: &str,
        features: &[PairFeatureVector],
        curves: &[FewShotCurve],
        feature_names: &[String],
    ) -> Result<Self> {
        let index = feature_index(features, task);
        let mut ds = Dataset::new(task, feature_names.to_vec());
        for c in curves.iter().filter(|c| c.task == task) {
            let row = index.get(&(c.source.as_str(), c.target.as_str()));
            let values = feature_names
                .iter()
                .map(|name| {
                    if name == "s0" {
                        Some(c.s0)
                    } else {
                        row.and_then(|r| r.get_named(name))
                    }
                })
                .collect::<Option<Vec<f64>>>();
            match values {
                Some(values) => ds.rows.push(DatasetRow {
                    source: c.source.clone(),
                    target: c.target.clone(),
                    n: 0,
                    values,
                    y: c.alpha,
                }),
                None => ds.excluded += 1,
            }
        }
        ds.sort();
        Ok(ds)
    }

    fn sort(&mut self) {
        self.rows.sort_by(|a, b| {
            (a.target.as_str(), a.source.as_str(), a.n).cmp(&(b.target.as_str(), b.source.as_str(), b.n))
        });
    }
}

fn feature_index<'a>(
    features: &'a [PairFeatureVector],
    task: &str,
) -> BTreeMap<(&'a str, &'a str), &'a PairFeatureVector> {
    features
        .iter()
        .filter(|f| f.task == task)
        .map(|f| ((f.source.as_str(), f.target.as_str()), f))
        .collect()
}
