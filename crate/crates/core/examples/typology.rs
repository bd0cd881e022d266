//! Typological similarity from the bundled property snapshot.
//!
//! Run with `cargo run --example typology`.

use xlingual::typology::{iou_similarity, PropertyClass, PropertySet, TypologyDb};

fn main() {
    let ja: PropertySet = ["Genitive-Noun-Order", "Subject-Object-Verb Order"].iter().collect();
    let fr: PropertySet = ["Genitive-Noun-Order", "Subject-Verb-Object Order"].iter().collect();
    println!("toy sets: IoU = {:.4}", iou_similarity(&ja, &fr));

    let db = TypologyDb::vendored();
    let pairs = [("en", "de"), ("en", "ja"), ("hi", "ur"), ("zh", "vi")];
    println!("{:<8} {:>6} {:>6}", "pair", "synt", "phono");
    for (s, t) in pairs {
        let synt = db.similarity(s, t, PropertyClass::Syntactic).unwrap_or(f64::NAN);
        let phono = db.similarity(s, t, PropertyClass::Phonological).unwrap_or(f64::NAN);
        println!("{:<8} {synt:>6.3} {phono:>6.3}", format!("{s}->{t}"));
    }
}
