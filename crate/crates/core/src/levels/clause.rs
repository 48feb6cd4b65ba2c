//! Clause level. Clauses are paired through the chunk alignment.
//!
//! - `intra`: aligned chunk pairs that also sit in aligned clauses, as an
//!   F-mean over the chunks covered by clauses on each side.
//! - `inter`: `(parent, child, label)` triples preserved across aligned
//!   clauses, as an F-mean. Unmeasured when neither side has a parent link.
//! - `chunks_per_clause`: mean chunks per clause over a configured maximum.
//! - `fragmentation`: mean of `1 − tokens / token span` per clause.
//! - `long_dist`: mean head-to-head token distance of parent/child clauses
//!   over sentence length. Unmeasured without parent links.

use std::collections::HashMap;

use crate::alignment::{align_clauses, ChunkAlignment, ClauseAlignment};
use crate::model::{f_mean_counts, fold_case, AnnotatedUnit, Chunk, Clause, LevelMeasurement};

use super::ScoringOptions;

fn clause_of_chunk(clauses: &[Clause]) -> HashMap<usize, usize> {
    clauses
        .iter()
        .flat_map(|cl| cl.chunk_ids.iter().map(move |&c| (c, cl.id)))
        .collect()
}

fn triples(clauses: &[Clause]) -> Vec<(usize, usize, Option<String>)> {
    clauses
        .iter()
        .filter_map(|cl| {
            cl.parent
                .map(|p| (p, cl.id, cl.relation_label.as_deref().map(fold_case)))
        })
        .collect()
}

/// Head token of a clause: the head of its first chunk.
fn clause_head(clause: &Clause, chunks: &[Chunk]) -> usize {
    chunks[clause.chunk_ids[0]].head
}

/// Clause alignment for a pair, if both sides carry chunk and clause layers.
pub fn clause_alignment(
    candidate: &AnnotatedUnit,
    reference: &AnnotatedUnit,
    chunks: &ChunkAlignment,
) -> Option<ClauseAlignment> {
    Some(align_clauses(
        candidate.clause_layer()?,
        reference.clause_layer()?,
        chunks,
    ))
}

/// `None` when either side lacks a clause (or chunk) layer.
pub fn measure(
    candidate: &AnnotatedUnit,
    reference: &AnnotatedUnit,
    chunk_alignment: &ChunkAlignment,
    clause_alignment: &ClauseAlignment,
    options: &ScoringOptions,
) -> Option<LevelMeasurement> {
    let cand_clauses = candidate.clause_layer()?;
    let ref_clauses = reference.clause_layer()?;
    let cand_chunks = candidate.chunk_layer()?;
    reference.chunk_layer()?;

    let cand_owner = clause_of_chunk(cand_clauses);
    let ref_owner = clause_of_chunk(ref_clauses);
    let clause_map = clause_alignment.lookup();

    let intra = chunk_alignment
        .pairs
        .iter()
        .filter(|(c, r)| {
            match (cand_owner.get(c), ref_owner.get(r)) {
                (Some(kc), Some(kr)) => clause_map.get(kc) == Some(kr),
                _ => false,
            }
        })
        .count();
    let mut m = LevelMeasurement::default().with_p(
        "intra",
        f_mean_counts(intra, cand_owner.len(), ref_owner.len()),
    );

    let cand_triples = triples(cand_clauses);
    let ref_triples = triples(ref_clauses);
    if !(cand_triples.is_empty() && ref_triples.is_empty()) {
        let matched = cand_triples
            .iter()
            .filter(|(p, k, label)| {
                let (Some(rp), Some(rk)) = (clause_map.get(p), clause_map.get(k)) else {
                    return false;
                };
                ref_triples
                    .iter()
                    .any(|(q, j, l)| q == rp && j == rk && l == label)
            })
            .count();
        m = m.with_p(
            "inter",
            f_mean_counts(matched, cand_triples.len(), ref_triples.len()),
        );
    }

    let n_clauses = cand_clauses.len() as f64;
    let mean_chunks = cand_clauses
        .iter()
        .map(|c| c.chunk_ids.len())
        .sum::<usize>() as f64
        / n_clauses;
    m = m.with_q(
        "chunks_per_clause",
        (mean_chunks / options.max_chunks_per_clause).min(1.0),
    );

    let fragmentation = cand_clauses
        .iter()
        .map(|cl| {
            let spans = cl.chunk_ids.iter().map(|&c| &cand_chunks[c].span);
            let tokens: usize = spans.clone().map(|s| s.len()).sum();
            let start = spans.clone().map(|s| s.start).min().unwrap_or(0);
            let end = spans.map(|s| s.end).max().unwrap_or(0);
            clause_fragmentation(tokens, end.saturating_sub(start))
        })
        .sum::<f64>()
        / n_clauses;
    m = m.with_q("fragmentation", fragmentation.clamp(0.0, 1.0));

    let n_tokens = candidate.tokens.len().max(1) as f64;
    let distances: Vec<f64> = cand_clauses
        .iter()
        .filter_map(|cl| {
            let parent = &cand_clauses[cl.parent?];
            let d = clause_head(cl, cand_chunks).abs_diff(clause_head(parent, cand_chunks));
            Some(d as f64 / n_tokens)
        })
        .collect();
    if !distances.is_empty() {
        let mean = distances.iter().sum::<f64>() / distances.len() as f64;
        m = m.with_q("long_dist", mean.min(1.0));
    }
    Some(m)
}

/// `1 − tokens / span`: zero for a contiguous clause.
pub fn clause_fragmentation(tokens: usize, span: usize) -> f64 {
    if span == 0 {
        return 0.0;
    }
    (1.0 - tokens as f64 / span as f64).clamp(0.0, 1.0)
}
