//! Entity-flow level: compares the source's entity sequence with the
//! candidate's.

use crate::model::{AnnotatedUnit, LevelMeasurement};

/// Step score on the relative length difference
/// `d = |len(src) − len(cand)| / len(src)`:
///
/// | d            | score |
/// |--------------|-------|
/// | 0            | 1.0   |
/// | (0, 0.2]     | 0.9   |
/// | (0.2, 0.3]   | 0.75  |
/// | > 0.3        | 0.0   |
///
/// `None` for an empty source sequence.
pub fn compare_length<S>(source: &[S], candidate: &[S]) -> Option<f64> {
    let ls = source.len();
    if ls == 0 {
        return None;
    }
    let diff = ls.abs_diff(candidate.len());
    // Integer comparisons keep the 20% / 30% boundaries exact.
    Some(if diff == 0 {
        1.0
    } else if 5 * diff <= ls {
        0.9
    } else if 10 * diff <= 3 * ls {
        0.75
    } else {
        0.0
    })
}

/// Unit-cost insert/delete/substitute distance.
pub fn levenshtein<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(x != y);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// `1 − lev(src, cand) / max(len)`; 1 for two empty sequences.
pub fn entity_edit_similarity<T: PartialEq>(source: &[T], candidate: &[T]) -> f64 {
    let longest = source.len().max(candidate.len());
    if longest == 0 {
        return 1.0;
    }
    1.0 - levenshtein(source, candidate) as f64 / longest as f64
}

/// `None` unless the source has a non-empty entity sequence and the
/// candidate has an entity layer. The disfluency `seq` is the share of the
/// sequence that had to be edited.
pub fn measure(source: Option<&AnnotatedUnit>, candidate: &AnnotatedUnit) -> Option<LevelMeasurement> {
    let src = source?.entity_sequence.as_deref()?;
    let cand = candidate.entity_sequence.as_deref()?;
    let seq_len = compare_length(src, cand)?;
    let seq_edit = entity_edit_similarity(src, cand);
    Some(
        LevelMeasurement::default()
            .with_p("seq_len", seq_len)
            .with_p("seq_edit", seq_edit)
            .with_q("seq", 1.0 - seq_edit),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("e{i}")).collect()
    }

    #[test]
    fn length_steps() {
        assert_eq!(compare_length(&seq(5), &seq(5)), Some(1.0));
        assert_eq!(compare_length(&seq(10), &seq(9)), Some(0.9));
        assert_eq!(compare_length(&seq(10), &seq(8)), Some(0.9));
        assert_eq!(compare_length(&seq(10), &seq(7)), Some(0.75));
        assert_eq!(compare_length(&seq(10), &seq(13)), Some(0.75));
        assert_eq!(compare_length(&seq(10), &seq(6)), Some(0.0));
        assert_eq!(compare_length(&seq(3), &seq(0)), Some(0.0));
        assert_eq!(compare_length::<String>(&[], &seq(2)), None);
    }

    #[test]
    fn edit_similarity_examples() {
        assert_eq!(entity_edit_similarity(&["A", "B"], &["A", "B"]), 1.0);
        assert!((entity_edit_similarity(&["A", "B", "C"], &["A", "C"]) - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(entity_edit_similarity(&["A", "B"], &["C", "D"]), 0.0);
        assert_eq!(levenshtein(&["k", "i", "t"], &["s", "i", "t", "s"]), 2);
    }

    #[test]
    fn measurement_requires_both_sequences() {
        let mut src = AnnotatedUnit::default();
        let mut cand = AnnotatedUnit::default();
        assert!(measure(Some(&src), &cand).is_none());
        src.entity_sequence = Some(vec!["A".into(), "B".into(), "C".into()]);
        assert!(measure(Some(&src), &cand).is_none());
        assert!(measure(None, &cand).is_none());
        cand.entity_sequence = Some(vec![]);
        let m = measure(Some(&src), &cand).unwrap();
        assert_eq!(m.p["seq_len"], 0.0);
        assert_eq!(m.p["seq_edit"], 0.0);
        assert_eq!(m.q["seq"], 1.0);
    }
}
