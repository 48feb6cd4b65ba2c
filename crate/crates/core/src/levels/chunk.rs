//! Chunk level: head and function-marker correctness of aligned chunks,
//! chunk size, chunk count and uncommon named entities.

use crate::alignment::{match_tokens, AlignmentResources, ChunkAlignment, MatchStage};
use crate::ingest::Lexicon;
use crate::model::{f_mean_counts, AnnotatedUnit, Chunk, LevelMeasurement};

use super::ScoringOptions;

fn marker_bag(unit: &AnnotatedUnit, chunk: &Chunk) -> Vec<String> {
    let mut bag: Vec<String> = chunk
        .function_markers
        .iter()
        .filter_map(|&i| unit.tokens.get(i))
        .map(|t| t.folded())
        .collect();
    bag.sort_unstable();
    bag
}

/// `None` when either side lacks a chunk layer.
pub fn measure(
    candidate: &AnnotatedUnit,
    reference: &AnnotatedUnit,
    alignment: &ChunkAlignment,
    lexicon: &Lexicon,
    resources: &AlignmentResources,
    options: &ScoringOptions,
) -> Option<LevelMeasurement> {
    let cand_chunks = candidate.chunk_layer()?;
    let ref_chunks = reference.chunk_layer()?;

    let mut heads = 0;
    let mut markers = 0;
    for &(c, r) in &alignment.pairs {
        let (cc, rc) = (&cand_chunks[c], &ref_chunks[r]);
        let (ch, rh) = (&candidate.tokens[cc.head], &reference.tokens[rc.head]);
        if MatchStage::ALL
            .iter()
            .any(|&s| match_tokens(ch, rh, s, resources))
        {
            heads += 1;
        }
        if marker_bag(candidate, cc) == marker_bag(reference, rc) {
            markers += 1;
        }
    }
    let (nc, nr) = (cand_chunks.len(), ref_chunks.len());

    let mean_len = cand_chunks.iter().map(Chunk::len).sum::<usize>() as f64 / nc as f64;
    let mut m = LevelMeasurement::default()
        .with_p("head", f_mean_counts(heads, nc, nr))
        .with_p("vibh", f_mean_counts(markers, nc, nr))
        .with_q("words_per_chunk", (mean_len / options.max_chunk_len).min(1.0))
        .with_q("nchunk", (nc as f64 / lexicon.ave_chunks_per_sentence).min(1.0));
    if lexicon.has_frequencies() {
        let rare_ne = cand_chunks
            .iter()
            .filter(|c| c.is_named_entity && !lexicon.is_common(&candidate.tokens[c.head].surface))
            .count();
        m = m.with_q("uncom_ne", (rare_ne as f64 / nc as f64).min(1.0));
    }
    Some(m)
}
