//! Score the sample corpus with every resource loaded and print one line per
//! unit plus the corpus and per-level means.
//!
//! ```bash
//! cargo run --example score_corpus
//! ```

use std::path::PathBuf;

use cogease::alignment::AlignmentResources;
use cogease::ingest;
use cogease::levels::Evaluator;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let profile = ingest::load_profile(&data("profile.json"))?;
    let stats = ingest::load_stats(&data("stats.json"))?;
    let lexicon = ingest::load_lexicon(
        Some(&data("freq.tsv")),
        Some(&data("terms.txt")),
        &data("stats.json"),
    )?;
    let resources = AlignmentResources {
        stem_rules: stats.stem_rules(),
        synonyms: ingest::load_synonyms(&data("synonyms.txt"))?,
    };
    let corpus = ingest::load_corpus(&data("corpus.jsonl"))?;
    for d in &corpus.diagnostics {
        eprintln!("skipped: {d}");
    }

    let evaluator = Evaluator::new(lexicon).with_resources(resources);
    let (report, failures) = evaluator.evaluate(&corpus.pairs, &profile, 1);
    for d in &failures {
        eprintln!("unscored: {d}");
    }

    println!("profile {}", &report.profile_hash[..12]);
    for unit in &report.units {
        let active: Vec<&str> = unit.weights.keys().map(|l| l.as_str()).collect();
        println!("{:<4} G = {:.4}  ref #{}  levels: {}", unit.id, unit.g, unit.reference, active.join(", "));
    }
    println!("corpus mean G = {:.4}", report.corpus_mean_g);
    for (level, mean) in &report.per_level_mean {
        println!("  {:<12} mean G = {:.4}", level.as_str(), mean);
    }
    Ok(())
}
