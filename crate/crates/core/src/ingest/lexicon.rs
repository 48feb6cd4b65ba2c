//! Word-frequency lexicon, term list and language statistics.

use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Read};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::IngestError;
use crate::alignment::StemRules;
use crate::model::{fold_case, Token};

pub const DEFAULT_COMMON_RANK_CUTOFF: usize = 5000;

/// Per-language averages and tokenizer/stemmer settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LanguageStats {
    pub ave_sentence_len: f64,
    pub ave_chunks_per_sentence: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub common_rank_cutoff: Option<usize>,
    /// Ordered `[suffix, replacement]` rules for lemma-less stem matching.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suffix_rules: Vec<(String, String)>,
}

impl LanguageStats {
    pub fn new(ave_sentence_len: f64, ave_chunks_per_sentence: f64) -> Self {
        Self {
            ave_sentence_len,
            ave_chunks_per_sentence,
            common_rank_cutoff: None,
            suffix_rules: Vec::new(),
        }
    }

    pub fn from_reader(reader: impl Read) -> Result<Self, IngestError> {
        let stats: Self = serde_json::from_reader(reader)
            .map_err(|e| IngestError::format("stats", None, e.to_string()))?;
        stats.check()?;
        Ok(stats)
    }

    fn check(&self) -> Result<(), IngestError> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.ave_sentence_len) {
            return Err(IngestError::InvalidStats(format!(
                "ave_sentence_len must be > 0, got {}",
                self.ave_sentence_len
            )));
        }
        if !positive(self.ave_chunks_per_sentence) {
            return Err(IngestError::InvalidStats(format!(
                "ave_chunks_per_sentence must be > 0, got {}",
                self.ave_chunks_per_sentence
            )));
        }
        if self.common_rank_cutoff == Some(0) {
            return Err(IngestError::InvalidStats(
                "common_rank_cutoff must be > 0".into(),
            ));
        }
        Ok(())
    }

    pub fn stem_rules(&self) -> StemRules {
        StemRules::new(self.suffix_rules.iter().map(|(s, r)| (s.as_str(), r.as_str())))
    }
}

/// Frequency ranks, term list and language averages used by the
/// disfluency parameters.
#[derive(Debug, Clone)]
pub struct Lexicon {
    frequency: HashMap<String, u64>,
    ranks: HashMap<String, usize>,
    pub common_rank_cutoff: usize,
    terms: HashSet<Vec<String>>,
    longest_term: usize,
    pub ave_sentence_len: f64,
    pub ave_chunks_per_sentence: f64,
}

impl Lexicon {
    /// A lexicon with statistics only: no frequency data and no terms.
    pub fn new(stats: &LanguageStats) -> Self {
        Self {
            frequency: HashMap::new(),
            ranks: HashMap::new(),
            common_rank_cutoff: stats.common_rank_cutoff.unwrap_or(DEFAULT_COMMON_RANK_CUTOFF),
            terms: HashSet::new(),
            longest_term: 0,
            ave_sentence_len: stats.ave_sentence_len,
            ave_chunks_per_sentence: stats.ave_chunks_per_sentence,
        }
    }

    /// Replaces the frequency table. Keys are case-folded; counts of
    /// variants that fold together are summed. Rank 1 is the most frequent
    /// word, ties broken alphabetically.
    pub fn with_frequencies<S: AsRef<str>>(mut self, counts: impl IntoIterator<Item = (S, u64)>) -> Self {
        let mut frequency: HashMap<String, u64> = HashMap::new();
        for (word, count) in counts {
            *frequency.entry(fold_case(word.as_ref())).or_default() += count;
        }
        let mut ordered: Vec<(&String, &u64)> = frequency.iter().collect();
        ordered.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
        self.ranks = ordered
            .iter()
            .enumerate()
            .map(|(i, (w, _))| ((*w).clone(), i + 1))
            .collect();
        self.frequency = frequency;
        self
    }

    /// Adds terms; a multi-word term is matched as a token sequence.
    pub fn with_terms<S: AsRef<str>>(mut self, terms: impl IntoIterator<Item = S>) -> Self {
        for term in terms {
            let words: Vec<String> = term.as_ref().split_whitespace().map(fold_case).collect();
            if !words.is_empty() {
                self.longest_term = self.longest_term.max(words.len());
                self.terms.insert(words);
            }
        }
        self
    }

    pub fn with_cutoff(mut self, cutoff: usize) -> Self {
        self.common_rank_cutoff = cutoff;
        self
    }

    pub fn has_frequencies(&self) -> bool {
        !self.frequency.is_empty()
    }

    pub fn count(&self, word: &str) -> u64 {
        self.frequency.get(&fold_case(word)).copied().unwrap_or(0)
    }

    pub fn rank(&self, word: &str) -> Option<usize> {
        self.ranks.get(&fold_case(word)).copied()
    }

    /// Common iff the word's frequency rank is within the cutoff.
    pub fn is_common(&self, word: &str) -> bool {
        self.rank(word).is_some_and(|r| r <= self.common_rank_cutoff)
    }

    pub fn is_term(&self, word: &str) -> bool {
        self.terms.contains(&vec![fold_case(word)])
    }

    /// Number of tokens covered by term occurrences, longest match first.
    pub fn term_token_count(&self, tokens: &[Token]) -> usize {
        if self.terms.is_empty() {
            return 0;
        }
        let folded: Vec<String> = tokens.iter().map(Token::folded).collect();
        let mut covered = 0;
        let mut i = 0;
        while i < folded.len() {
            let max = self.longest_term.min(folded.len() - i);
            match (1..=max).rev().find(|&n| self.terms.contains(&folded[i..i + n])) {
                Some(n) => {
                    covered += n;
                    i += n;
                }
                None => i += 1,
            }
        }
        covered
    }
}

/// Parses `token<TAB>count` lines. Blank lines are skipped.
pub fn read_frequencies(reader: impl BufRead) -> Result<Vec<(String, u64)>, IngestError> {
    let mut out = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| IngestError::format("frequency", Some(n + 1), e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let (word, count) = line
            .split_once('\t')
            .ok_or_else(|| IngestError::format("frequency", Some(n + 1), "expected token<TAB>count"))?;
        let count: u64 = count.trim().parse().map_err(|_| {
            IngestError::format("frequency", Some(n + 1), format!("bad count {count:?}"))
        })?;
        if word.is_empty() || count == 0 {
            return Err(IngestError::format(
                "frequency",
                Some(n + 1),
                "token must be non-empty and count ≥ 1",
            ));
        }
        out.push((word.to_string(), count));
    }
    Ok(out)
}

/// One term per line; blank lines are skipped.
pub fn read_terms(reader: impl BufRead) -> Result<Vec<String>, IngestError> {
    let mut out = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| IngestError::format("terms", Some(n + 1), e.to_string()))?;
        let term = line.trim();
        if !term.is_empty() {
            out.push(term.to_string());
        }
    }
    Ok(out)
}

pub fn load_stats(path: &Path) -> Result<LanguageStats, IngestError> {
    LanguageStats::from_reader(super::open_file(path)?)
}

/// Builds a lexicon from its three files. The frequency and term files are
/// optional; without a frequency file no word counts as uncommon-checkable
/// and the frequency-based parameters are left unmeasured.
pub fn load_lexicon(
    frequency: Option<&Path>,
    terms: Option<&Path>,
    stats: &Path,
) -> Result<Lexicon, IngestError> {
    let stats = load_stats(stats)?;
    let mut lexicon = Lexicon::new(&stats);
    if let Some(path) = frequency {
        lexicon = lexicon.with_frequencies(read_frequencies(super::open_file(path)?)?);
    }
    if let Some(path) = terms {
        lexicon = lexicon.with_terms(read_terms(super::open_file(path)?)?);
    }
    Ok(lexicon)
}
