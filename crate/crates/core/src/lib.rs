//! Cognitive-ease scoring for machine translation output.
//!
//! A candidate translation is compared with one or more references at up to
//! five levels (word, chunk, clause, discourse, entity flow). Each level
//! yields adequacy parameters `P` and disfluency parameters `Q`; these are
//! combined into an adequacy score `A`, a disfluency score `B` and a level
//! score `G = A·(1 − γ·B^δ)`. Level scores are combined linearly into the
//! overall score, with weights renormalized over the levels whose
//! annotations are present.
//!
//! ```
//! use cogease::ingest::{LanguageStats, Lexicon};
//! use cogease::levels::Evaluator;
//! use cogease::model::{AnnotatedUnit, UnitPair, WeightProfile};
//!
//! let lexicon = Lexicon::new(&LanguageStats::new(20.0, 4.0));
//! let pair = UnitPair::new(
//!     "s1",
//!     AnnotatedUnit::from_words(&["the", "cat", "sat"]),
//!     AnnotatedUnit::from_words(&["a", "cat", "sat"]),
//! );
//! let report = Evaluator::new(lexicon).score_unit(&pair, &WeightProfile::uniform()).unwrap();
//! assert!(report.g > 0.0 && report.g < 1.0);
//! ```

pub mod alignment;
mod diagnostic;
pub mod explain;
pub mod ingest;
pub mod levels;
pub mod model;
pub mod tuning;

pub use diagnostic::Diagnostic;
