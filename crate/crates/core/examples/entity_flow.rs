//! Entity-flow comparison between a source and a candidate entity sequence:
//! the length step table and the normalized edit similarity.
//!
//! ```bash
//! cargo run --example entity_flow
//! ```

use cogease::levels::{compare_length, entity::measure, entity_edit_similarity, levenshtein};
use cogease::model::AnnotatedUnit;

fn main() {
    let source: Vec<String> = (1..=10).map(|i| format!("E{i}")).collect();
    println!("length ratio table for a 10-entity source:");
    for kept in [10, 9, 8, 7, 6, 5] {
        let score = compare_length(&source, &source[..kept]).unwrap();
        println!("  {kept:>2} entities (d = {:.1}) -> {score}", (10 - kept) as f64 / 10.0);
    }

    let src = ["Paris", "Berlin", "Rome", "Paris"];
    let cand = ["Paris", "Rome", "Berlin", "Paris"];
    println!(
        "\n{:?} vs {:?}\n  edit distance {}  similarity {:.3}",
        src,
        cand,
        levenshtein(&src, &cand),
        entity_edit_similarity(&src, &cand)
    );

    let mut source_unit = AnnotatedUnit::from_words(&["..."]);
    source_unit.entity_sequence = Some(src.iter().map(|s| s.to_string()).collect());
    let mut candidate = AnnotatedUnit::from_words(&["..."]);
    candidate.entity_sequence = Some(vec!["Paris".into(), "Berlin".into()]);
    let m = measure(Some(&source_unit), &candidate).unwrap();
    println!("\nmeasured parameters: P = {:?}, Q = {:?}", m.p, m.q);
}
