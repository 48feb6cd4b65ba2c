//! Word level: lexical overlap, function-word overlap, and sentence length,
//! rare-word and terminology burden.

use crate::alignment::WordAlignment;
use crate::ingest::Lexicon;
use crate::model::{f_mean_counts, AnnotatedUnit, LevelMeasurement, WordClass};

fn ratio(count: usize, average: f64) -> f64 {
    (count as f64 / average).min(1.0)
}

fn is_wordlike(surface: &str) -> bool {
    surface.chars().any(char::is_alphanumeric)
}

pub fn measure(
    candidate: &AnnotatedUnit,
    reference: &AnnotatedUnit,
    alignment: &WordAlignment,
    lexicon: &Lexicon,
) -> LevelMeasurement {
    let n = candidate.tokens.len();
    let mut m = LevelMeasurement::default();
    if n == 0 {
        m = m.with_p("lex", 0.0).with_q("nword", 0.0).with_q("term", 0.0);
        if lexicon.has_frequencies() {
            m = m.with_q("uncom", 0.0);
        }
        return m;
    }

    m = m.with_p(
        "lex",
        f_mean_counts(alignment.matched(), n, reference.tokens.len()),
    );

    if candidate.has_word_classes() && reference.has_word_classes() {
        let is_fn = |u: &AnnotatedUnit, i: usize| u.tokens[i].word_class == WordClass::Function;
        let cand_fn = (0..n).filter(|&i| is_fn(candidate, i)).count();
        let ref_fn = (0..reference.tokens.len())
            .filter(|&i| is_fn(reference, i))
            .count();
        if cand_fn + ref_fn > 0 {
            let matched = alignment
                .pairs
                .iter()
                .filter(|p| is_fn(candidate, p.candidate) && is_fn(reference, p.reference))
                .count();
            m = m.with_p("pos", f_mean_counts(matched, cand_fn, ref_fn));
        }
    }

    m = m.with_q("nword", ratio(n, lexicon.ave_sentence_len));
    if lexicon.has_frequencies() {
        let uncommon = candidate
            .tokens
            .iter()
            .filter(|t| is_wordlike(&t.surface) && !lexicon.is_common(&t.surface))
            .count();
        m = m.with_q("uncom", ratio(uncommon, lexicon.ave_sentence_len));
    }
    m.with_q(
        "term",
        ratio(lexicon.term_token_count(&candidate.tokens), lexicon.ave_sentence_len),
    )
}
