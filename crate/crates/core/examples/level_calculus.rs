//! The scoring arithmetic by hand: F-mean, one level's `G = A(1 - gamma B^delta)`,
//! weight folding for missing parameters, and the weighted combination of
//! levels.
//!
//! ```bash
//! cargo run --example level_calculus
//! ```

use std::collections::BTreeMap;

use cogease::model::{
    aggregate, f_mean, f_mean_counts, level_cognition, Level, LevelMeasurement, LevelScore,
    WeightProfile,
};

fn main() {
    println!("F-mean(P=0.5, R=1.0) = {:.5}", f_mean(0.5, 1.0));
    println!("F-mean from counts 4 of 5 / 4 of 6 = {:.5}", f_mean_counts(4, 5, 6));
    println!("G(A=0.8, B=0.5, gamma=0.5, delta=1) = {}", level_cognition(0.8, 0.5, 0.5, 1.0));
    println!("G(A=0.8, B=0.5, gamma=0.5, delta=2) = {}\n", level_cognition(0.8, 0.5, 0.5, 2.0));

    let profile = WeightProfile::uniform();

    // `pos` is unmeasured, so the word-level adequacy weights fold onto `lex`.
    let word = LevelMeasurement::default()
        .with_p("lex", 0.9)
        .with_q("nword", 1.0)
        .with_q("uncom", 0.2)
        .with_q("term", 0.0);
    let chunk = LevelMeasurement::default()
        .with_p("head", 0.75)
        .with_p("vibh", 0.5)
        .with_q("words_per_chunk", 0.4)
        .with_q("nchunk", 1.0);

    let mut scores = BTreeMap::new();
    for (level, m) in [(Level::Word, &word), (Level::Chunk, &chunk)] {
        let s = LevelScore::compose(m, profile.level(level).unwrap());
        println!(
            "{:<6} alpha' = {:?}\n       A = {:.4}  B = {:.4}  G = {:.4}",
            level.as_str(),
            s.alpha,
            s.a,
            s.b,
            s.g
        );
        scores.insert(level, s);
    }
    for level in [Level::Clause, Level::Discourse, Level::EntityFlow] {
        scores.insert(level, LevelScore::inactive());
    }

    let total = aggregate(&scores, &profile).expect("two active levels");
    println!("\nactive weights after renormalization: {:?}", total.weights);
    println!("overall G = {:.4}", total.g);
}
