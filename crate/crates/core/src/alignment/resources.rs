use std::collections::{BTreeSet, HashMap};
use std::io::BufRead;

use crate::model::fold_case;

/// Ordered suffix-rewrite rules used when a token carries no lemma.
///
/// The first rule whose suffix matches (and leaves a non-empty stem) wins.
/// An empty rule list stems every word to itself.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StemRules {
    rules: Vec<(String, String)>,
}

impl StemRules {
    pub fn new<S: Into<String>>(rules: impl IntoIterator<Item = (S, S)>) -> Self {
        Self {
            rules: rules
                .into_iter()
                .map(|(s, r)| (fold_case(&s.into()), r.into()))
                .collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn stem(&self, word: &str) -> String {
        let word = fold_case(word);
        for (suffix, replacement) in &self.rules {
            if let Some(stem) = word.strip_suffix(suffix.as_str()) {
                if !stem.is_empty() {
                    return format!("{stem}{replacement}");
                }
            }
        }
        word
    }
}

/// Synonym sets; two words are synonyms when they share a set.
#[derive(Debug, Clone, Default)]
pub struct SynonymTable {
    sets: HashMap<String, BTreeSet<usize>>,
    count: usize,
}

impl SynonymTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_set<S: AsRef<str>>(&mut self, members: &[S]) {
        let id = self.count;
        self.count += 1;
        for m in members {
            let m = fold_case(m.as_ref().trim());
            if !m.is_empty() {
                self.sets.entry(m).or_default().insert(id);
            }
        }
    }

    /// Reads one tab-separated synonym set per line; blank lines are ignored.
    pub fn from_reader(reader: impl BufRead) -> std::io::Result<Self> {
        let mut table = Self::new();
        for line in reader.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let members: Vec<&str> = line.split('\t').collect();
            table.add_set(&members);
        }
        Ok(table)
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn are_synonyms(&self, a: &str, b: &str) -> bool {
        let (Some(x), Some(y)) = (self.sets.get(&fold_case(a)), self.sets.get(&fold_case(b))) else {
            return false;
        };
        !x.is_disjoint(y)
    }
}

/// Everything the matcher needs beyond the tokens themselves.
#[derive(Debug, Clone, Default)]
pub struct AlignmentResources {
    pub stem_rules: StemRules,
    pub synonyms: SynonymTable,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stem_rules_apply_first_match() {
        let rules = StemRules::new([("ning", ""), ("s", "")]);
        assert_eq!(rules.stem("Running"), "run");
        assert_eq!(rules.stem("cats"), "cat");
        assert_eq!(rules.stem("s"), "s");
        assert_eq!(StemRules::default().stem("Cats"), "cats");
    }

    #[test]
    fn synonym_file_format() {
        let table = SynonymTable::from_reader("big\tlarge\thuge\n\nquick\tfast\n".as_bytes()).unwrap();
        assert_eq!(table.len(), 2);
        assert!(table.are_synonyms("Big", "large"));
        assert!(!table.are_synonyms("big", "fast"));
        assert!(!table.are_synonyms("big", "unknown"));
    }
}
