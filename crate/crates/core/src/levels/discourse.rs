//! Discourse level: topic/focus agreement, preserved discourse relations,
//! and the distance spanned by linked clauses.

use crate::alignment::ClauseAlignment;
use crate::model::{f_mean_counts, fold_case, AnnotatedUnit, DiscourseRelation, LevelMeasurement};

fn same_entity(a: &Option<String>, b: &Option<String>) -> bool {
    a.as_deref().map(fold_case) == b.as_deref().map(fold_case)
}

/// 1 when topic and focus both agree, 0.5 when one does, 0 otherwise.
pub fn topic_focus_agreement(candidate: &AnnotatedUnit, reference: &AnnotatedUnit) -> Option<f64> {
    let (c, r) = (candidate.discourse.as_ref()?, reference.discourse.as_ref()?);
    let hits = usize::from(same_entity(&c.topic, &r.topic)) + usize::from(same_entity(&c.focus, &r.focus));
    Some(hits as f64 / 2.0)
}

/// `None` when either side lacks a discourse layer. Relation endpoints are
/// mapped through `clauses` when a clause alignment exists, otherwise
/// compared by clause id.
pub fn measure(
    candidate: &AnnotatedUnit,
    reference: &AnnotatedUnit,
    clauses: Option<&ClauseAlignment>,
) -> Option<LevelMeasurement> {
    let cand = candidate.discourse.as_ref()?;
    let refd = reference.discourse.as_ref()?;

    let mut m = LevelMeasurement::default().with_p(
        "topic_focus",
        topic_focus_agreement(candidate, reference)?,
    );

    if !(cand.relations.is_empty() && refd.relations.is_empty()) {
        let map = clauses.map(|k| k.lookup());
        let project = |id: usize| match &map {
            Some(map) => map.get(&id).copied(),
            None => Some(id),
        };
        let matched = cand
            .relations
            .iter()
            .filter(|rel| {
                let (Some(from), Some(to)) = (project(rel.from), project(rel.to)) else {
                    return false;
                };
                let label = fold_case(&rel.label);
                refd.relations
                    .iter()
                    .any(|r| r.from == from && r.to == to && fold_case(&r.label) == label)
            })
            .count();
        m = m.with_p(
            "relations",
            f_mean_counts(matched, cand.relations.len(), refd.relations.len()),
        );
    }

    let n_clauses = candidate.clause_layer().map_or(0, <[_]>::len);
    m = m.with_q("linked_dist", linked_distance(&cand.relations, n_clauses));
    Some(m)
}

/// Mean clause-id distance of relation endpoints over the clause count.
pub fn linked_distance(relations: &[DiscourseRelation], n_clauses: usize) -> f64 {
    if relations.is_empty() || n_clauses == 0 {
        return 0.0;
    }
    let mean = relations
        .iter()
        .map(|r| r.from.abs_diff(r.to) as f64)
        .sum::<f64>()
        / relations.len() as f64;
    (mean / n_clauses as f64).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Chunk, Clause, DiscourseAnnotation};

    fn unit(topic: &str, focus: &str, relations: Vec<(usize, usize, &str)>, n_clauses: usize) -> AnnotatedUnit {
        let words: Vec<String> = (0..n_clauses).map(|i| format!("w{i}")).collect();
        let mut u = AnnotatedUnit::from_words(&words);
        u.chunks = Some(
            (0..n_clauses)
                .map(|i| Chunk { id: i, span: i..i + 1, head: i, function_markers: vec![], is_named_entity: false })
                .collect(),
        );
        u.clauses = Some(
            (0..n_clauses)
                .map(|i| Clause { id: i, chunk_ids: vec![i], parent: None, relation_label: None })
                .collect(),
        );
        u.discourse = Some(DiscourseAnnotation {
            topic: Some(topic.into()),
            focus: Some(focus.into()),
            relations: relations
                .into_iter()
                .map(|(from, to, label)| DiscourseRelation { from, to, label: label.into() })
                .collect(),
        });
        u
    }

    #[test]
    fn identical_annotations() {
        let u = unit("cat", "mat", vec![(0, 1, "cause")], 2);
        let m = measure(&u, &u, None).unwrap();
        assert_eq!(m.p["topic_focus"], 1.0);
        assert_eq!(m.p["relations"], 1.0);
        assert_eq!(m.q["linked_dist"], 0.5);
    }

    #[test]
    fn topic_only_agreement() {
        let c = unit("Cat", "mat", vec![], 1);
        let r = unit("cat", "hat", vec![], 1);
        let m = measure(&c, &r, None).unwrap();
        assert_eq!(m.p["topic_focus"], 0.5);
        assert!(!m.p.contains_key("relations"));
    }

    #[test]
    fn long_link() {
        let u = unit("a", "b", vec![(0, 3, "elab")], 4);
        assert_eq!(measure(&u, &u, None).unwrap().q["linked_dist"], 0.75);
    }

    #[test]
    fn relations_follow_clause_alignment() {
        let c = unit("a", "b", vec![(0, 1, "cause")], 2);
        let r = unit("a", "b", vec![(1, 0, "cause")], 2);
        let swapped = ClauseAlignment { pairs: vec![(0, 1), (1, 0)] };
        assert_eq!(measure(&c, &r, Some(&swapped)).unwrap().p["relations"], 1.0);
        assert_eq!(measure(&c, &r, None).unwrap().p["relations"], 0.0);
    }

    #[test]
    fn missing_layer_inactive() {
        let c = unit("a", "b", vec![], 1);
        let r = AnnotatedUnit::from_words(&["w0"]);
        assert!(measure(&c, &r, None).is_none());
    }
}
