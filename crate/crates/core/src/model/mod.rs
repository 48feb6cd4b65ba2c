//! Domain types and the pure scoring calculus.

mod annotation;
pub mod calculus;
pub mod profile;
mod report;

pub use annotation::{
    fold_case, AnnotatedUnit, Chunk, Clause, DiscourseAnnotation, DiscourseRelation, Token,
    UnitPair, WordClass,
};
pub use calculus::{
    aggregate, f_mean, f_mean_counts, fold_simplex, level_cognition, weighted_sum, Aggregate,
    CalculusError, LevelMeasurement, LevelScore,
};
pub use profile::{
    validate_profile, validate_profile_with, Level, LevelWeights, Registry, WeightProfile,
    SIMPLEX_TOLERANCE,
};
pub use report::{EvaluationReport, UnitReport};
