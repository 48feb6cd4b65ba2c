//! Per-level parameter measurement and unit/corpus scoring.
//!
//! Measuring (alignment plus every `P`/`Q` value) does not depend on the
//! weight profile, so [`UnitMeasurement`] can be computed once and rescored
//! under many profiles, which is what tuning does.

pub mod chunk;
pub mod clause;
pub mod discourse;
pub mod entity;
pub mod word;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alignment::{align_chunks, align_words, AlignmentResources, ChunkAlignment, WordAlignment};
use crate::diagnostic::Diagnostic;
use crate::ingest::Lexicon;
use crate::model::{
    aggregate, AnnotatedUnit, CalculusError, EvaluationReport, Level, LevelMeasurement, LevelScore,
    LevelWeights, UnitPair, UnitReport, WeightProfile,
};

pub use entity::{compare_length, entity_edit_similarity, levenshtein};

/// Normalizers for the size-based disfluency parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoringOptions {
    /// Mean chunk length at which `words_per_chunk` saturates.
    pub max_chunk_len: f64,
    /// Mean chunks per clause at which `chunks_per_clause` saturates.
    pub max_chunks_per_clause: f64,
}

impl Default for ScoringOptions {
    fn default() -> Self {
        Self {
            max_chunk_len: 5.0,
            max_chunks_per_clause: 6.0,
        }
    }
}

/// Measured parameters of every active level, one map per reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitMeasurement {
    pub id: String,
    pub references: Vec<BTreeMap<Level, LevelMeasurement>>,
}

/// Applies a level's weights to its measurement. The entity-flow
/// disfluency only counts when the profile enables it.
pub fn compose_level(
    level: Level,
    measurement: &LevelMeasurement,
    profile: &WeightProfile,
) -> Option<LevelScore> {
    let weights = profile.level(level)?;
    if level == Level::EntityFlow && !profile.entity_flow_fluency {
        let adequacy_only = LevelMeasurement {
            p: measurement.p.clone(),
            q: BTreeMap::new(),
        };
        return Some(LevelScore::compose(&adequacy_only, weights));
    }
    Some(LevelScore::compose(measurement, weights))
}

/// Scores one reference's measurements: every level appears in the
/// result, inactive when unmeasured or absent from the profile.
pub fn score_levels(
    measured: &BTreeMap<Level, LevelMeasurement>,
    profile: &WeightProfile,
) -> BTreeMap<Level, LevelScore> {
    Level::ALL
        .iter()
        .map(|&level| {
            let score = measured
                .get(&level)
                .and_then(|m| compose_level(level, m, profile))
                .unwrap_or_else(LevelScore::inactive);
            (level, score)
        })
        .collect()
}

impl UnitMeasurement {
    /// Scores against every reference and keeps the best overall `G`
    /// (earliest reference on ties).
    pub fn score(&self, profile: &WeightProfile) -> Result<UnitReport, CalculusError> {
        let mut best: Option<UnitReport> = None;
        let mut first_err = None;
        for (idx, measured) in self.references.iter().enumerate() {
            let levels = score_levels(measured, profile);
            match aggregate(&levels, profile) {
                Ok(agg) => {
                    if best.as_ref().is_none_or(|b| agg.g > b.g) {
                        best = Some(UnitReport {
                            id: self.id.clone(),
                            reference: idx,
                            levels,
                            weights: agg.weights,
                            g: agg.g,
                        });
                    }
                }
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
        best.ok_or_else(|| first_err.unwrap_or(CalculusError::NoActiveLevels))
    }
}

/// Scores candidates against references with shared, read-only resources.
#[derive(Debug, Clone)]
pub struct Evaluator {
    pub lexicon: Lexicon,
    pub resources: AlignmentResources,
    pub options: ScoringOptions,
}

impl Evaluator {
    pub fn new(lexicon: Lexicon) -> Self {
        Self {
            lexicon,
            resources: AlignmentResources::default(),
            options: ScoringOptions::default(),
        }
    }

    pub fn with_resources(mut self, resources: AlignmentResources) -> Self {
        self.resources = resources;
        self
    }

    pub fn with_options(mut self, options: ScoringOptions) -> Self {
        self.options = options;
        self
    }

    /// Measures every level of `candidate` against one reference.
    pub fn measure_against(
        &self,
        source: Option<&AnnotatedUnit>,
        candidate: &AnnotatedUnit,
        reference: &AnnotatedUnit,
    ) -> BTreeMap<Level, LevelMeasurement> {
        let mut out = BTreeMap::new();
        let words = align_words(&candidate.tokens, &reference.tokens, &self.resources);
        out.insert(
            Level::Word,
            word::measure(candidate, reference, &words, &self.lexicon),
        );

        let chunks = self.chunk_alignment(candidate, reference, &words);
        let clauses = chunks
            .as_ref()
            .and_then(|ca| clause::clause_alignment(candidate, reference, ca));
        if let Some(ca) = &chunks {
            if let Some(m) = chunk::measure(
                candidate,
                reference,
                ca,
                &self.lexicon,
                &self.resources,
                &self.options,
            ) {
                out.insert(Level::Chunk, m);
            }
            if let Some(ka) = &clauses {
                if let Some(m) = clause::measure(candidate, reference, ca, ka, &self.options) {
                    out.insert(Level::Clause, m);
                }
            }
        }
        if let Some(m) = discourse::measure(candidate, reference, clauses.as_ref()) {
            out.insert(Level::Discourse, m);
        }
        if let Some(m) = entity::measure(source, candidate) {
            out.insert(Level::EntityFlow, m);
        }
        out
    }

    fn chunk_alignment(
        &self,
        candidate: &AnnotatedUnit,
        reference: &AnnotatedUnit,
        words: &WordAlignment,
    ) -> Option<ChunkAlignment> {
        Some(align_chunks(
            candidate.chunk_layer()?,
            reference.chunk_layer()?,
            words,
        ))
    }

    pub fn measure(&self, pair: &UnitPair) -> UnitMeasurement {
        UnitMeasurement {
            id: pair.id.clone(),
            references: pair
                .references
                .iter()
                .map(|r| self.measure_against(pair.source.as_ref(), &pair.candidate, r))
                .collect(),
        }
    }

    pub fn score_unit(
        &self,
        pair: &UnitPair,
        profile: &WeightProfile,
    ) -> Result<UnitReport, CalculusError> {
        self.measure(pair).score(profile)
    }

    /// Scores a corpus on up to `jobs` threads. Output order follows input
    /// order; units that cannot be aggregated are reported as diagnostics.
    pub fn evaluate(
        &self,
        pairs: &[UnitPair],
        profile: &WeightProfile,
        jobs: usize,
    ) -> (EvaluationReport, Vec<Diagnostic>) {
        let score = |pair: &UnitPair| self.score_unit(pair, profile);
        let results: Vec<Result<UnitReport, CalculusError>> = if jobs <= 1 {
            pairs.iter().map(score).collect()
        } else {
            match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
                Ok(pool) => pool.install(|| pairs.par_iter().map(score).collect()),
                Err(_) => pairs.iter().map(score).collect(),
            }
        };
        let mut units = Vec::with_capacity(pairs.len());
        let mut diagnostics = Vec::new();
        for (pair, result) in pairs.iter().zip(results) {
            match result {
                Ok(unit) => units.push(unit),
                Err(e) => diagnostics.push(Diagnostic::new(format!("{}: {e}", pair.id))),
            }
        }
        (
            EvaluationReport::from_units(profile.fingerprint(), units),
            diagnostics,
        )
    }
}

/// Word-level score of a candidate against one reference.
pub fn score_word_level(
    candidate: &AnnotatedUnit,
    reference: &AnnotatedUnit,
    alignment: &WordAlignment,
    lexicon: &Lexicon,
    weights: &LevelWeights,
) -> LevelScore {
    LevelScore::compose(&word::measure(candidate, reference, alignment, lexicon), weights)
}

/// Chunk-level score; inactive when either side has no chunks.
pub fn score_chunk_level(
    candidate: &AnnotatedUnit,
    reference: &AnnotatedUnit,
    alignment: &ChunkAlignment,
    lexicon: &Lexicon,
    resources: &AlignmentResources,
    options: &ScoringOptions,
    weights: &LevelWeights,
) -> LevelScore {
    chunk::measure(candidate, reference, alignment, lexicon, resources, options)
        .map_or_else(LevelScore::inactive, |m| LevelScore::compose(&m, weights))
}

/// Clause-level score; inactive when either side has no clauses.
pub fn score_clause_level(
    candidate: &AnnotatedUnit,
    reference: &AnnotatedUnit,
    alignment: &ChunkAlignment,
    options: &ScoringOptions,
    weights: &LevelWeights,
) -> LevelScore {
    clause::clause_alignment(candidate, reference, alignment)
        .and_then(|ka| clause::measure(candidate, reference, alignment, &ka, options))
        .map_or_else(LevelScore::inactive, |m| LevelScore::compose(&m, weights))
}

/// Discourse-level score; inactive when either side has no discourse layer.
pub fn score_discourse_level(
    candidate: &AnnotatedUnit,
    reference: &AnnotatedUnit,
    clauses: Option<&crate::alignment::ClauseAlignment>,
    weights: &LevelWeights,
) -> LevelScore {
    discourse::measure(candidate, reference, clauses)
        .map_or_else(LevelScore::inactive, |m| LevelScore::compose(&m, weights))
}

/// Entity-flow score with its disfluency switched off (`G = A`).
pub fn score_entity_flow(
    source: Option<&AnnotatedUnit>,
    candidate: &AnnotatedUnit,
    weights: &LevelWeights,
) -> LevelScore {
    entity::measure(source, candidate).map_or_else(LevelScore::inactive, |m| {
        LevelScore::compose(&LevelMeasurement { p: m.p, q: BTreeMap::new() }, weights)
    })
}
