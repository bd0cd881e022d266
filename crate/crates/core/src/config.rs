//! Flat `key = value` run configuration.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// Settings shared by the command-line workflows. Every field is optional
/// here; command-line flags take precedence over values from a file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    pub task: Option<String>,
    pub languages: Option<Vec<String>>,
    pub corpora: Option<PathBuf>,
    pub typology: Option<PathBuf>,
    pub centroids: Option<PathBuf>,
    pub lm_records: Option<PathBuf>,
    pub observations: Option<PathBuf>,
    pub features: Option<PathBuf>,
    pub lambda: Option<f64>,
    pub k_keep: Option<usize>,
    pub token_budget: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

const KEYS: &[&str] = &[
    "task",
    "languages",
    "corpora",
    "typology",
    "centroids",
    "lm_records",
    "observations",
    "features",
    "lambda",
    "k_keep",
    "token_budget",
    "seed",
    "out",
];

impl RunConfig {
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(origin, idx + 1, "expected `key = value`"))?;
            let k = k.trim().replace('-', "_");
            if !KEYS.contains(&k.as_str()) {
                return Err(Error::parse(origin, idx + 1, format!("unknown key '{k}'")));
            }
            values.insert(k, (idx + 1, v.trim().to_string()));
        }

        fn num<T: std::str::FromStr>(origin: &str, key: &str, entry: Option<&(usize, String)>) -> Result<Option<T>> {
            entry
                .map(|(line, v)| {
                    v.parse()
                        .map_err(|_| Error::parse(origin, *line, format!("bad value for {key}: '{v}'")))
                })
                .transpose()
        }
        let text_of = |k: &str| values.get(k).map(|(_, v)| v.clone());
        let path_of = |k: &str| text_of(k).map(PathBuf::from);

        Ok(Self {
            task: text_of("task"),
            languages: text_of("languages").map(|v| split_list(&v)),
            corpora: path_of("corpora"),
            typology: path_of("typology"),
            centroids: path_of("centroids"),
            lm_records: path_of("lm_records"),
            observations: path_of("observations"),
            features: path_of("features"),
            lambda: num(origin, "lambda", values.get("lambda"))?,
            k_keep: num(origin, "k_keep", values.get("k_keep"))?,
            token_budget: num(origin, "token_budget", values.get("token_budget"))?,
            seed: num(origin, "seed", values.get("seed"))?,
            out: path_of("out"),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        if !path.exists() {
            return Err(Error::MissingFile(path.to_path_buf()));
        }
        Self::parse(&fs::read_to_string(path)?, &path.display().to_string())
    }
}

/// Comma-separated list, trimmed, empties dropped.
pub fn split_list(v: &str) -> Vec<String> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}
