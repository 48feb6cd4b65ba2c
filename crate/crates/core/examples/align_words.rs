//! Staged word alignment: exact matches first, then stems, then synonyms,
//! with crossing links kept to a minimum.
//!
//! ```bash
//! cargo run --example align_words
//! ```

use cogease::alignment::{align_words, AlignmentResources, MatchStage, StemRules, SynonymTable};
use cogease::model::AnnotatedUnit;

fn show(candidate: &AnnotatedUnit, reference: &AnnotatedUnit, resources: &AlignmentResources) {
    let alignment = align_words(&candidate.tokens, &reference.tokens, resources);
    println!("candidate: {}", candidate.raw_text);
    println!("reference: {}", reference.raw_text);
    for pair in &alignment.pairs {
        println!(
            "  {:>10} -> {:<10} ({:?})",
            candidate.tokens[pair.candidate].surface,
            reference.tokens[pair.reference].surface,
            pair.stage
        );
    }
    println!(
        "  matched {} of {}/{}, exact {}, stem {}, synonym {}, crossings {}\n",
        alignment.matched(),
        alignment.candidate_len,
        alignment.reference_len,
        alignment.count_stage(MatchStage::Exact),
        alignment.count_stage(MatchStage::Stem),
        alignment.count_stage(MatchStage::Synonym),
        alignment.crossings()
    );
}

fn main() {
    let mut synonyms = SynonymTable::new();
    synonyms.add_set(&["mat", "rug", "carpet"]);
    let resources = AlignmentResources {
        stem_rules: StemRules::new([("ing", ""), ("s", "")]),
        synonyms,
    };

    show(
        &AnnotatedUnit::from_words(&["The", "cat", "sits", "on", "the", "mat"]),
        &AnnotatedUnit::from_words(&["the", "cat", "is", "sitting", "on", "the", "rug"]),
        &resources,
    );

    // Repeated words: the alignment keeps links parallel where it can.
    show(
        &AnnotatedUnit::from_words(&["the", "dog", "saw", "the", "cat"]),
        &AnnotatedUnit::from_words(&["the", "cat", "was", "seen", "by", "the", "dog"]),
        &resources,
    );

    // Without resources only exact (case-insensitive) matches survive.
    show(
        &AnnotatedUnit::from_words(&["Cats", "sitting"]),
        &AnnotatedUnit::from_words(&["cat", "sits"]),
        &AlignmentResources::default(),
    );
}
