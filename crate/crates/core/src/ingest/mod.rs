//! Readers for corpora, lexicons, synonym tables and weight profiles.

mod corpus;
mod lexicon;
mod validate;

use std::fs::File;
use std::io::{BufReader, Read};
use std::path::Path;

use thiserror::Error;

pub use corpus::{
    parse_corpus, record_to_pair, tokenize, write_corpus, ParsedCorpus, RawChunk, RawClass,
    RawClause, RawDiscourse, RawRecord, RawRelation, RawToken, RawUnit,
};
pub use lexicon::{
    load_lexicon, load_stats, read_frequencies, read_terms, LanguageStats, Lexicon,
    DEFAULT_COMMON_RANK_CUTOFF,
};
pub use validate::validate_annotations;

use crate::alignment::SynonymTable;
use crate::diagnostic::Diagnostic;
use crate::model::{validate_profile, WeightProfile};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("read failed at line {line}: {source}")]
    Read {
        line: usize,
        #[source]
        source: std::io::Error,
    },
    #[error("{what}{}: {message}", .line.map(|l| format!(" line {l}")).unwrap_or_default())]
    Format {
        what: &'static str,
        line: Option<usize>,
        message: String,
    },
    #[error("invalid language statistics: {0}")]
    InvalidStats(String),
    #[error("invalid weight profile: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidProfile(Vec<Diagnostic>),
}

impl IngestError {
    pub(crate) fn format(what: &'static str, line: Option<usize>, message: impl Into<String>) -> Self {
        Self::Format {
            what,
            line,
            message: message.into(),
        }
    }

    /// Whether the error stems from invalid content rather than I/O.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Self::Io { .. } | Self::Read { .. })
    }
}

pub(crate) fn open_file(path: &Path) -> Result<BufReader<File>, IngestError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| IngestError::Io {
            path: path.display().to_string(),
            source,
        })
}

/// Parses a profile and checks all of its simplexes.
pub fn read_profile(reader: impl Read) -> Result<WeightProfile, IngestError> {
    let profile: WeightProfile = serde_json::from_reader(reader)
        .map_err(|e| IngestError::format("profile", None, e.to_string()))?;
    let diagnostics = validate_profile(&profile);
    if !diagnostics.is_empty() {
        return Err(IngestError::InvalidProfile(diagnostics));
    }
    Ok(profile)
}

pub fn load_profile(path: &Path) -> Result<WeightProfile, IngestError> {
    read_profile(open_file(path)?)
}

pub fn load_corpus(path: &Path) -> Result<ParsedCorpus, IngestError> {
    parse_corpus(open_file(path)?)
}

pub fn load_synonyms(path: &Path) -> Result<SynonymTable, IngestError> {
    SynonymTable::from_reader(open_file(path)?).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_round_trip_and_rejection() {
        let json = serde_json::to_string(&WeightProfile::uniform()).unwrap();
        assert_eq!(read_profile(json.as_bytes()).unwrap(), WeightProfile::uniform());

        let bad = json.replacen("\"weight\":0.2", "\"weight\":0.9", 1);
        assert!(matches!(
            read_profile(bad.as_bytes()),
            Err(IngestError::InvalidProfile(_))
        ));
        assert!(read_profile("[]".as_bytes()).is_err());
    }
}
