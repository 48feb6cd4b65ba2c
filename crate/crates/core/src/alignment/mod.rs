//! Word, chunk and clause alignment between a candidate and a reference.

mod chunks;
mod resources;
mod words;

pub use chunks::{align_chunks, align_clauses, ChunkAlignment, ClauseAlignment, IdAlignment};
pub use resources::{AlignmentResources, StemRules, SynonymTable};
pub use words::{
    align_words, align_words_with_stages, match_tokens, AlignedPair, MatchStage, WordAlignment,
    EXHAUSTIVE_EDGE_LIMIT,
};
