use std::collections::{HashMap, HashSet};

use crate::diagnostic::Diagnostic;
use crate::model::AnnotatedUnit;

/// Checks every present annotation layer against its invariants; one
/// diagnostic per violation.
pub fn validate_annotations(unit: &AnnotatedUnit) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let n = unit.tokens.len();

    for (pos, token) in unit.tokens.iter().enumerate() {
        if token.surface.is_empty() {
            out.push(Diagnostic::new(format!("token {pos} has an empty surface")));
        }
        if token.index != pos {
            out.push(Diagnostic::new(format!(
                "token {pos} carries index {}",
                token.index
            )));
        }
    }

    let chunks = unit.chunks.as_deref().unwrap_or_default();
    for (pos, chunk) in chunks.iter().enumerate() {
        if chunk.id != pos {
            out.push(Diagnostic::new(format!("chunk {pos} carries id {}", chunk.id)));
        }
        if chunk.span.is_empty() {
            out.push(Diagnostic::new(format!("chunk {pos} has an empty span")));
            continue;
        }
        if chunk.span.end > n {
            out.push(Diagnostic::new(format!(
                "chunk span out of bounds: chunk {pos} [{}, {}) with {n} tokens",
                chunk.span.start, chunk.span.end
            )));
            continue;
        }
        if !chunk.span.contains(&chunk.head) {
            out.push(Diagnostic::new(format!(
                "chunk {pos} head {} outside its span",
                chunk.head
            )));
        }
        for &m in &chunk.function_markers {
            if !chunk.span.contains(&m) {
                out.push(Diagnostic::new(format!(
                    "chunk {pos} function marker {m} outside its span"
                )));
            }
        }
    }
    let mut spans: Vec<(usize, usize, usize)> = chunks
        .iter()
        .filter(|c| !c.span.is_empty())
        .map(|c| (c.span.start, c.span.end, c.id))
        .collect();
    spans.sort_unstable();
    for w in spans.windows(2) {
        if w[1].0 < w[0].1 {
            out.push(Diagnostic::new(format!(
                "chunks {} and {} overlap",
                w[0].2, w[1].2
            )));
        }
    }

    let clauses = unit.clauses.as_deref().unwrap_or_default();
    if !clauses.is_empty() && unit.chunks.is_none() {
        out.push(Diagnostic::new("clauses present without a chunk layer"));
    }
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (pos, clause) in clauses.iter().enumerate() {
        if clause.id != pos {
            out.push(Diagnostic::new(format!("clause {pos} carries id {}", clause.id)));
        }
        if clause.chunk_ids.is_empty() {
            out.push(Diagnostic::new(format!("clause {pos} has no chunks")));
        }
        for &c in &clause.chunk_ids {
            if c >= chunks.len() {
                out.push(Diagnostic::new(format!(
                    "clause {pos} references chunk {c} of {}",
                    chunks.len()
                )));
            } else if let Some(prev) = owner.insert(c, pos) {
                out.push(Diagnostic::new(format!(
                    "chunk {c} belongs to clauses {prev} and {pos}"
                )));
            }
        }
        if let Some(parent) = clause.parent {
            if parent >= clauses.len() {
                out.push(Diagnostic::new(format!(
                    "clause {pos} has unknown parent {parent}"
                )));
            }
        }
    }
    for start in 0..clauses.len() {
        let mut seen = HashSet::new();
        let mut at = start;
        while let Some(parent) = clauses[at].parent.filter(|&p| p < clauses.len()) {
            if !seen.insert(at) {
                break;
            }
            if parent == start {
                out.push(Diagnostic::new(format!("clause {start} is its own ancestor")));
                break;
            }
            at = parent;
        }
    }

    if let Some(discourse) = &unit.discourse {
        for rel in &discourse.relations {
            for end in [rel.from, rel.to] {
                if end >= clauses.len() {
                    out.push(Diagnostic::new(format!(
                        "discourse relation {}→{} references missing clause {end}",
                        rel.from, rel.to
                    )));
                }
            }
        }
    }

    if let Some(entities) = &unit.entity_sequence {
        for (pos, e) in entities.iter().enumerate() {
            if e.trim().is_empty() {
                out.push(Diagnostic::new(format!("entity {pos} is empty")));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Chunk, Clause, DiscourseAnnotation, DiscourseRelation};

    fn chunk(id: usize, a: usize, b: usize) -> Chunk {
        Chunk {
            id,
            span: a..b,
            head: a,
            function_markers: vec![],
            is_named_entity: false,
        }
    }

    fn clause(id: usize, chunks: &[usize], parent: Option<usize>) -> Clause {
        Clause {
            id,
            chunk_ids: chunks.to_vec(),
            parent,
            relation_label: None,
        }
    }

    fn unit() -> AnnotatedUnit {
        AnnotatedUnit::from_words(&["a", "b", "c", "d"])
    }

    #[test]
    fn tokens_only_is_clean() {
        assert!(validate_annotations(&unit()).is_empty());
    }

    #[test]
    fn overlapping_chunks() {
        let mut u = unit();
        u.chunks = Some(vec![chunk(0, 0, 2), chunk(1, 1, 3)]);
        assert_eq!(validate_annotations(&u).len(), 1);
    }

    #[test]
    fn out_of_bounds_chunk() {
        let mut u = unit();
        u.chunks = Some(vec![chunk(0, 2, 9)]);
        let d = validate_annotations(&u);
        assert_eq!(d.len(), 1);
        assert!(d[0].message.starts_with("chunk span out of bounds"));
    }

    #[test]
    fn head_and_markers_inside_span() {
        let mut u = unit();
        let mut c = chunk(0, 0, 2);
        c.head = 3;
        c.function_markers = vec![1, 2];
        u.chunks = Some(vec![c]);
        assert_eq!(validate_annotations(&u).len(), 2);
    }

    #[test]
    fn clause_referencing_missing_chunk() {
        let mut u = unit();
        u.chunks = Some(vec![chunk(0, 0, 1), chunk(1, 1, 2), chunk(2, 2, 4)]);
        u.clauses = Some(vec![clause(0, &[0, 9], None)]);
        assert_eq!(validate_annotations(&u).len(), 1);
    }

    #[test]
    fn shared_chunk_and_parent_cycle() {
        let mut u = unit();
        u.chunks = Some(vec![chunk(0, 0, 2), chunk(1, 2, 4)]);
        u.clauses = Some(vec![clause(0, &[0], Some(1)), clause(1, &[0, 1], Some(0))]);
        let d = validate_annotations(&u);
        assert!(d.iter().any(|d| d.message.contains("belongs to clauses")));
        assert!(d.iter().any(|d| d.message.contains("own ancestor")));
    }

    #[test]
    fn discourse_endpoints_must_exist() {
        let mut u = unit();
        u.chunks = Some(vec![chunk(0, 0, 4)]);
        u.clauses = Some(vec![clause(0, &[0], None)]);
        u.discourse = Some(DiscourseAnnotation {
            relations: vec![DiscourseRelation { from: 0, to: 2, label: "cause".into() }],
            ..Default::default()
        });
        assert_eq!(validate_annotations(&u).len(), 1);
    }

    #[test]
    fn empty_entity_string() {
        let mut u = unit();
        u.entity_sequence = Some(vec!["A".into(), " ".into()]);
        assert_eq!(validate_annotations(&u).len(), 1);
    }
}
