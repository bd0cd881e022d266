//! File formats exchanged with the external model probe: centroid TSV,
//! LM records CSV, and mask-plan CSV.

mod common;

use xlingual::corpus::{tokenize, Corpus};
use xlingual::lm::{
    aggregate_lm_records, generate_mask_plan, parse_lm_records, write_lm_records, write_mask_plans,
    LmRecord,
};
use xlingual::similarity::{centroid_cosine, CentroidSet};
use xlingual::Error;

const CODES: [&str; 3] = ["en", "fi", "sw"];

#[test]
fn centroid_tsv_round_trip() {
    let centroids = common::fixture_centroids(&CODES, 16);
    let text = common::centroid_tsv(&centroids);
    let set = CentroidSet::parse(&text, "probe").unwrap();
    assert_eq!(set.centroids, centroids);
    assert_eq!(set.metadata["model"], "fixture-encoder");
    assert_eq!(set.metadata["k"], "8");
    for c in set.centroids.values() {
        let cos = centroid_cosine(c, c).unwrap();
        assert!((cos - 1.0).abs() <= 1e-6);
    }
}

#[test]
fn centroid_tsv_rejects_malformed_rows() {
    let ragged = "en\t1,2,3\nfi\t1,2\n";
    assert!(matches!(CentroidSet::parse(ragged, "p"), Err(Error::Parse { line: 2, .. })));
    assert!(CentroidSet::parse("en\t1,x\n", "p").is_err());
    assert!(CentroidSet::parse("en 1,2\n", "p").is_err());
    assert!(CentroidSet::parse("en\t1,2\nen\t3,4\n", "p").is_err());
}

/// Writes plans the way the CLI does, then simulates a probe that scores
/// each planned sentence and reports records back.
#[test]
fn mask_plan_to_lm_records_round_trip() {
    let cfg = common::mask_config();
    let mut plans = Vec::new();
    for code in CODES {
        let corpus = Corpus::new(code, common::fixture_sentences(code, 20)).unwrap();
        for (id, s) in corpus.sentences().iter().enumerate() {
            plans.push((code.to_string(), generate_mask_plan(tokenize(s).len(), id, &cfg).unwrap()));
        }
    }
    let mut plan_csv = Vec::new();
    write_mask_plans(&mut plan_csv, &plans, &cfg).unwrap();
    let plan_text = String::from_utf8(plan_csv).unwrap();
    assert!(plan_text.starts_with("# density=0.15\n# mean_span_len=3\n# seed=7\n"));
    let span_rows = plan_text.lines().filter(|l| !l.starts_with('#')).count() - 1;
    assert_eq!(span_rows, plans.iter().map(|(_, p)| p.spans.len()).sum::<usize>());

    let records: Vec<LmRecord> = plans
        .iter()
        .map(|(lang, p)| LmRecord {
            language: lang.clone(),
            sentence_id: p.sentence_id,
            loglik: -(p.masked_tokens() as f64) * 0.75,
            all_spans_exact: p.spans.len() == 1,
        })
        .collect();
    let mut rec_csv = Vec::new();
    write_lm_records(&mut rec_csv, &records, &cfg).unwrap();
    let file = parse_lm_records(&String::from_utf8(rec_csv).unwrap(), "probe").unwrap();
    assert!(file.warnings.is_empty(), "{:?}", file.warnings);
    assert_eq!(file.records, records);

    let metrics = aggregate_lm_records(&file.records).unwrap();
    assert_eq!(metrics.len(), 3);
    for m in metrics.values() {
        assert_eq!(m.n_sentences, 20);
        assert!(m.lm_l < 0.0 && (0.0..=1.0).contains(&m.lm_em));
    }
}

#[test]
fn lm_records_warn_on_missing_metadata_and_duplicates() {
    let text = "lang,sentence_id,loglik,all_spans_exact\nen,0,-1.5,1\nen,0,-2.0,0\n";
    let file = parse_lm_records(text, "p").unwrap();
    assert_eq!(file.warnings.len(), 4);
    assert!(parse_lm_records("en,0,-1,1\n", "p").is_err());
    let header = "lang,sentence_id,loglik,all_spans_exact\n";
    assert!(parse_lm_records(&format!("{header}en,0,0.5,1\n"), "p").is_err());
    assert!(parse_lm_records(&format!("{header}en,0,-1,yes\n"), "p").is_err());
}

#[test]
fn lm_metrics_hand_example() {
    let rec = |id, ll, ok| LmRecord {
        language: "fi".into(),
        sentence_id: id,
        loglik: ll,
        all_spans_exact: ok,
    };
    let m = aggregate_lm_records(&[rec(0, -2.0, true), rec(1, -4.0, false), rec(2, -6.0, true), rec(3, -8.0, true)])
        .unwrap();
    let fi = &m["fi"];
    assert_eq!(fi.lm_l, -5.0);
    assert_eq!(fi.lm_em, 0.75);
}
