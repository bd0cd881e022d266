//! Categorical typological properties per language and set-overlap similarity.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

const VENDORED_SNAPSHOT: &str = include_str!("../data/typology_snapshot.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropertyClass {
    Syntactic,
    Phonological,
}

impl FromStr for PropertyClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "syntactic" => Ok(PropertyClass::Syntactic),
            "phonological" => Ok(PropertyClass::Phonological),
            other => Err(format!("unknown property class '{other}'")),
        }
    }
}

impl fmt::Display for PropertyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PropertyClass::Syntactic => "syntactic",
            PropertyClass::Phonological => "phonological",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PropertySet(BTreeSet<String>);

impl PropertySet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a trimmed property; empty strings are ignored.
    pub fn insert(&mut self, property: &str) -> bool {
        let p = property.trim();
        !p.is_empty() && self.0.insert(p.to_string())
    }

    pub fn contains(&self, property: &str) -> bool {
        self.0.contains(property.trim())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }
}

impl<S: AsRef<str>> FromIterator<S> for PropertySet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut set = PropertySet::new();
        for p in iter {
            set.insert(p.as_ref());
        }
        set
    }
}

/// Value returned by [`iou_similarity`] when both sets are empty.
pub const EMPTY_UNION_SIMILARITY: f64 = 0.0;

/// Intersection over union of two property sets.
pub fn iou_similarity(a: &PropertySet, b: &PropertySet) -> f64 {
    iou_similarity_with(a, b, EMPTY_UNION_SIMILARITY)
}

pub fn iou_similarity_with(a: &PropertySet, b: &PropertySet, empty_union: f64) -> f64 {
    let inter = a.0.intersection(&b.0).count();
    let union = a.len() + b.len() - inter;
    if union == 0 {
        log::warn!("both property sets are empty; similarity set to {empty_union}");
        return empty_union;
    }
    inter as f64 / union as f64
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TypologyDb {
    entries: BTreeMap<(String, PropertyClass), PropertySet>,
}

impl TypologyDb {
    /// Parses `lang \t class \t property` rows. `#` lines and blank lines are skipped.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut entries: BTreeMap<(String, PropertyClass), PropertySet> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 3 {
                return Err(Error::parse(
                    origin,
                    line_no,
                    format!("expected 3 tab-separated columns, found {}", cols.len()),
                ));
            }
            let lang = cols[0].trim();
            let property = cols[2].trim();
            if lang.is_empty() || property.is_empty() {
                return Err(Error::parse(origin, line_no, "empty language or property"));
            }
            let class: PropertyClass = cols[1]
                .trim()
                .parse()
                .map_err(|e: String| Error::parse(origin, line_no, e))?;
            entries
                .entry((lang.to_string(), class))
                .or_default()
                .insert(property);
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        if !path.exists() {
            return Err(Error::MissingFile(path.to_path_buf()));
        }
        Self::parse(&fs::read_to_string(path)?, &path.display().to_string())
    }

    /// The snapshot shipped with the crate.
    pub fn vendored() -> Self {
        Self::parse(VENDORED_SNAPSHOT, "typology_snapshot.tsv")
            .expect("vendored typology snapshot is well-formed")
    }

    pub fn get(&self, language: &str, class: PropertyClass) -> Option<&PropertySet> {
        self.entries.get(&(language.to_string(), class))
    }

    pub fn languages(&self) -> BTreeSet<&str> {
        self.entries.keys().map(|(l, _)| l.as_str()).collect()
    }

    /// IoU between two languages for one class, or `None` when either
    /// language has no entry for that class.
    pub fn similarity(&self, source: &str, target: &str, class: PropertyClass) -> Option<f64> {
        let a = self.get(source, class)?;
        let b = self.get(target, class)?;
        Some(iou_similarity(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[&str]) -> PropertySet {
        items.iter().collect()
    }

    #[test]
    fn worked_iou_example() {
        let ja = set(&["Genitive-Noun-Order", "Subject-Object-Verb Order"]);
        let fr = set(&["Genitive-Noun-Order", "Subject-Verb-Object Order"]);
        assert!((iou_similarity(&ja, &fr) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn iou_identity_and_empty() {
        let a = set(&["X", "Y"]);
        assert_eq!(iou_similarity(&a, &a), 1.0);
        assert_eq!(iou_similarity(&set(&[]), &set(&["X"])), 0.0);
        assert_eq!(iou_similarity(&set(&[]), &set(&[])), 0.0);
        assert_eq!(iou_similarity_with(&set(&[]), &set(&[]), 0.5), 0.5);
    }

    #[test]
    fn properties_are_trimmed() {
        let a = set(&["  GNO "]);
        assert!(a.contains("GNO"));
        assert_eq!(iou_similarity(&a, &set(&["GNO"])), 1.0);
    }

    #[test]
    fn load_rows() {
        let db = TypologyDb::parse(
            "# comment\nja\tsyntactic\tGenitive-Noun-Order\nja\tsyntactic\tGenitive-Noun-Order\n",
            "t",
        )
        .unwrap();
        let s = db.get("ja", PropertyClass::Syntactic).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.contains("Genitive-Noun-Order"));
        assert!(db.get("ja", PropertyClass::Phonological).is_none());
    }

    #[test]
    fn rejects_unknown_class_with_line_number() {
        let err = TypologyDb::parse("ja\tsyntactic\tA\nja\tlexical\tB\n", "t").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_wrong_column_count() {
        let err = TypologyDb::parse("ja\tsyntactic\n", "t").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn vendored_snapshot_covers_studied_languages() {
        let db = TypologyDb::vendored();
        for lang in [
            "ar", "bn", "en", "fi", "id", "ru", "sw", "es", "de", "hi", "bg", "el", "fr", "tr",
            "ur", "vi", "zh",
        ] {
            for class in [PropertyClass::Syntactic, PropertyClass::Phonological] {
                let s = db.get(lang, class).unwrap_or_else(|| panic!("{lang} {class}"));
                assert!(!s.is_empty());
            }
        }
        assert_eq!(db.similarity("en", "en", PropertyClass::Syntactic), Some(1.0));
    }
}
