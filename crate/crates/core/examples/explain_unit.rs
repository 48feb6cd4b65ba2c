//! Per-level breakdown of one unit, and how the metric correlates with the
//! human judgments across the sample corpus.
//!
//! ```bash
//! cargo run --example explain_unit [unit-id]
//! ```

use std::path::PathBuf;

use cogease::alignment::AlignmentResources;
use cogease::explain::render_explanation;
use cogease::ingest;
use cogease::levels::Evaluator;
use cogease::model::Registry;
use cogease::tuning::correlation;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let id = std::env::args().nth(1).unwrap_or_else(|| "s1".into());
    let profile = ingest::load_profile(&data("profile.json"))?;
    let stats = ingest::load_stats(&data("stats.json"))?;
    let lexicon = ingest::load_lexicon(Some(&data("freq.tsv")), Some(&data("terms.txt")), &data("stats.json"))?;
    let evaluator = Evaluator::new(lexicon).with_resources(AlignmentResources {
        stem_rules: stats.stem_rules(),
        synonyms: ingest::load_synonyms(&data("synonyms.txt"))?,
    });
    let corpus = ingest::load_corpus(&data("corpus.jsonl"))?;

    let pair = corpus.pairs.iter().find(|p| p.id == id).ok_or(format!("no unit {id}"))?;
    let report = evaluator.score_unit(pair, &profile)?;
    print!("{}", render_explanation(&report, &Registry::standard()));

    let (report, _) = evaluator.evaluate(&corpus.pairs, &profile, 1);
    let metric: Vec<f64> = report.units.iter().map(|u| u.g).collect();
    let human: Vec<f64> = corpus.pairs.iter().filter_map(|p| p.human_score).collect();
    let c = correlation(&metric, &human)?;
    println!("\ncorpus: pearson {:.3}, spearman {:.3} over {} units", c.pearson, c.spearman, human.len());
    Ok(())
}
