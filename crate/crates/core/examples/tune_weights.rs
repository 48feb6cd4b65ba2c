//! Fit profile weights to the human scores in the sample corpus and compare
//! correlations before and after.
//!
//! ```bash
//! cargo run --example tune_weights
//! ```

use std::path::PathBuf;

use cogease::alignment::AlignmentResources;
use cogease::ingest;
use cogease::levels::Evaluator;
use cogease::model::{Level, WeightProfile};
use cogease::tuning::{fit_weights, TuningConfig};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let stats = ingest::load_stats(&data("stats.json"))?;
    let lexicon = ingest::load_lexicon(Some(&data("freq.tsv")), Some(&data("terms.txt")), &data("stats.json"))?;
    let evaluator = Evaluator::new(lexicon).with_resources(AlignmentResources {
        stem_rules: stats.stem_rules(),
        synonyms: ingest::load_synonyms(&data("synonyms.txt"))?,
    });
    let corpus = ingest::load_corpus(&data("corpus.jsonl"))?;

    let config = TuningConfig {
        seed: 42,
        // Keep the entity-flow share fixed; everything else is free.
        frozen: ["w.entity_flow".to_string()].into(),
        ..TuningConfig::default()
    };
    let result = fit_weights(&corpus.pairs, &evaluator, &WeightProfile::uniform(), &config)?;

    println!("loss {:.6} -> {:.6} in {} passes", result.initial_loss, result.final_loss, result.iterations);
    if let (Some(before), Some(after)) = (result.initial_correlation, result.correlation) {
        println!("pearson  {:.3} -> {:.3}", before.pearson, after.pearson);
        println!("spearman {:.3} -> {:.3}", before.spearman, after.spearman);
    }
    for level in Level::ALL {
        if let Some(lw) = result.profile.level(level) {
            println!("  w[{:<11}] = {:.4}  alpha = {:?}", level.as_str(), lw.weight, lw.alpha);
        }
    }
    Ok(())
}
