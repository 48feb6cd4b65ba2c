//! Chunk and clause alignment induced from lower-level links.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::words::WordAlignment;
use crate::model::{Chunk, Clause};

/// Injective pairing of candidate and reference ids (chunks or clauses).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IdAlignment {
    /// `(candidate id, reference id)`, sorted by candidate id.
    pub pairs: Vec<(usize, usize)>,
}

pub type ChunkAlignment = IdAlignment;
pub type ClauseAlignment = IdAlignment;

impl IdAlignment {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn reference_of(&self, candidate: usize) -> Option<usize> {
        self.pairs
            .iter()
            .find(|(c, _)| *c == candidate)
            .map(|&(_, r)| r)
    }

    pub fn lookup(&self) -> HashMap<usize, usize> {
        self.pairs.iter().copied().collect()
    }
}

/// Greedy maximum-overlap pairing: repeatedly take the unused pair with the
/// largest positive overlap, ties going to smaller candidate then smaller
/// reference id.
fn greedy_overlap(overlaps: BTreeMap<(usize, usize), usize>) -> IdAlignment {
    let mut ranked: Vec<((usize, usize), usize)> =
        overlaps.into_iter().filter(|(_, n)| *n > 0).collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut used_c = Vec::new();
    let mut used_r = Vec::new();
    let mut pairs = Vec::new();
    for ((c, r), _) in ranked {
        if used_c.contains(&c) || used_r.contains(&r) {
            continue;
        }
        used_c.push(c);
        used_r.push(r);
        pairs.push((c, r));
    }
    pairs.sort_unstable();
    IdAlignment { pairs }
}

fn chunk_index(chunks: &[Chunk], n_tokens: usize) -> Vec<Option<usize>> {
    let mut owner = vec![None; n_tokens];
    for chunk in chunks {
        for t in chunk.span.clone() {
            if let Some(slot) = owner.get_mut(t) {
                *slot = Some(chunk.id);
            }
        }
    }
    owner
}

/// Pairs each candidate chunk with the reference chunk sharing the most
/// word-alignment links (at least one).
pub fn align_chunks(
    candidate: &[Chunk],
    reference: &[Chunk],
    words: &WordAlignment,
) -> ChunkAlignment {
    let cand_owner = chunk_index(candidate, words.candidate_len);
    let ref_owner = chunk_index(reference, words.reference_len);
    let mut overlaps = BTreeMap::new();
    for p in &words.pairs {
        let c = cand_owner.get(p.candidate).copied().flatten();
        let r = ref_owner.get(p.reference).copied().flatten();
        if let (Some(c), Some(r)) = (c, r) {
            *overlaps.entry((c, r)).or_insert(0) += 1;
        }
    }
    greedy_overlap(overlaps)
}

/// Pairs clauses by the number of aligned chunk pairs they share.
pub fn align_clauses(
    candidate: &[Clause],
    reference: &[Clause],
    chunks: &ChunkAlignment,
) -> ClauseAlignment {
    let owner = |clauses: &[Clause]| -> HashMap<usize, usize> {
        clauses
            .iter()
            .flat_map(|cl| cl.chunk_ids.iter().map(move |&ch| (ch, cl.id)))
            .collect()
    };
    let (cand_owner, ref_owner) = (owner(candidate), owner(reference));
    let mut overlaps = BTreeMap::new();
    for (c, r) in &chunks.pairs {
        if let (Some(&kc), Some(&kr)) = (cand_owner.get(c), ref_owner.get(r)) {
            *overlaps.entry((kc, kr)).or_insert(0) += 1;
        }
    }
    greedy_overlap(overlaps)
}
