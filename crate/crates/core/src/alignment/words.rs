//! Stage-ordered injective word alignment.
//!
//! Stages run exact → stem → synonym. Each stage adds a maximum-cardinality
//! matching over the tokens still unmatched; among maximum matchings the one
//! with the fewest crossing links (counted against the whole alignment so
//! far) is kept, ties going to the lexicographically smallest pair list.

use serde::{Deserialize, Serialize};

use super::resources::AlignmentResources;
use crate::model::{fold_case, Token};

/// Stage graphs with at most this many edges are searched exhaustively.
pub const EXHAUSTIVE_EDGE_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchStage {
    Exact,
    Stem,
    Synonym,
}

impl MatchStage {
    pub const ALL: [MatchStage; 3] = [MatchStage::Exact, MatchStage::Stem, MatchStage::Synonym];
}

fn stem_key(token: &Token, resources: &AlignmentResources) -> String {
    match &token.lemma {
        Some(lemma) => fold_case(lemma),
        None => resources.stem_rules.stem(&token.surface),
    }
}

/// Whether two tokens match at `stage`.
pub fn match_tokens(a: &Token, b: &Token, stage: MatchStage, resources: &AlignmentResources) -> bool {
    match stage {
        MatchStage::Exact => a.folded() == b.folded(),
        MatchStage::Stem => stem_key(a, resources) == stem_key(b, resources),
        MatchStage::Synonym => {
            let forms = |t: &Token| {
                std::iter::once(t.surface.clone())
                    .chain(t.lemma.clone())
                    .collect::<Vec<_>>()
            };
            let (fa, fb) = (forms(a), forms(b));
            fa.iter()
                .any(|x| fb.iter().any(|y| resources.synonyms.are_synonyms(x, y)))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignedPair {
    pub candidate: usize,
    pub reference: usize,
    pub stage: MatchStage,
}

impl AlignedPair {
    fn crosses(&self, other: &AlignedPair) -> bool {
        crosses((self.candidate, self.reference), (other.candidate, other.reference))
    }
}

fn crosses(a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 < b.0 && a.1 > b.1) || (a.0 > b.0 && a.1 < b.1)
}

/// An injective candidate↔reference token correspondence.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct WordAlignment {
    /// Sorted by candidate index.
    pub pairs: Vec<AlignedPair>,
    pub candidate_len: usize,
    pub reference_len: usize,
}

impl WordAlignment {
    pub fn matched(&self) -> usize {
        self.pairs.len()
    }

    pub fn crossings(&self) -> usize {
        let mut n = 0;
        for (i, a) in self.pairs.iter().enumerate() {
            n += self.pairs[i + 1..].iter().filter(|b| a.crosses(b)).count();
        }
        n
    }

    pub fn count_stage(&self, stage: MatchStage) -> usize {
        self.pairs.iter().filter(|p| p.stage == stage).count()
    }

    pub fn reference_of(&self, candidate: usize) -> Option<usize> {
        self.pairs
            .iter()
            .find(|p| p.candidate == candidate)
            .map(|p| p.reference)
    }

    /// True when no token appears in two pairs and all indices are in range.
    pub fn is_injective(&self) -> bool {
        let mut seen_c = vec![false; self.candidate_len];
        let mut seen_r = vec![false; self.reference_len];
        for p in &self.pairs {
            if p.candidate >= self.candidate_len || p.reference >= self.reference_len {
                return false;
            }
            if std::mem::replace(&mut seen_c[p.candidate], true)
                || std::mem::replace(&mut seen_r[p.reference], true)
            {
                return false;
            }
        }
        true
    }
}

/// Aligns candidate tokens to reference tokens. Empty input on either side
/// yields an empty alignment; the synonym stage is skipped when the table
/// is empty.
pub fn align_words(
    candidate: &[Token],
    reference: &[Token],
    resources: &AlignmentResources,
) -> WordAlignment {
    align_words_with_stages(candidate, reference, resources, &MatchStage::ALL)
}

/// Like [`align_words`] but runs only the listed stages, in order.
pub fn align_words_with_stages(
    candidate: &[Token],
    reference: &[Token],
    resources: &AlignmentResources,
    stages: &[MatchStage],
) -> WordAlignment {
    let mut alignment = WordAlignment {
        pairs: Vec::new(),
        candidate_len: candidate.len(),
        reference_len: reference.len(),
    };
    if candidate.is_empty() || reference.is_empty() {
        return alignment;
    }
    let mut used_c = vec![false; candidate.len()];
    let mut used_r = vec![false; reference.len()];

    for &stage in stages {
        if stage == MatchStage::Synonym && resources.synonyms.is_empty() {
            continue;
        }
        let mut edges = Vec::new();
        for (i, c) in candidate.iter().enumerate().filter(|(i, _)| !used_c[*i]) {
            for (j, r) in reference.iter().enumerate().filter(|(j, _)| !used_r[*j]) {
                if match_tokens(c, r, stage, resources) {
                    edges.push((i, j));
                }
            }
        }
        if edges.is_empty() {
            continue;
        }
        let fixed: Vec<(usize, usize)> = alignment
            .pairs
            .iter()
            .map(|p| (p.candidate, p.reference))
            .collect();
        let chosen = if edges.len() <= EXHAUSTIVE_EDGE_LIMIT {
            exhaustive_matching(&edges, &fixed)
        } else {
            greedy_matching(&edges, &fixed, candidate.len(), reference.len())
        };
        for (c, r) in chosen {
            used_c[c] = true;
            used_r[r] = true;
            alignment.pairs.push(AlignedPair {
                candidate: c,
                reference: r,
                stage,
            });
        }
    }
    alignment.pairs.sort_by_key(|p| (p.candidate, p.reference));
    alignment
}

fn crossings_against(chosen: &[(usize, usize)], fixed: &[(usize, usize)]) -> usize {
    let mut n = 0;
    for (k, &a) in chosen.iter().enumerate() {
        n += chosen[k + 1..].iter().filter(|&&b| crosses(a, b)).count();
        n += fixed.iter().filter(|&&b| crosses(a, b)).count();
    }
    n
}

/// Best matching over a small edge set by enumeration: maximum size, then
/// fewest crossings, then lexicographically smallest.
fn exhaustive_matching(edges: &[(usize, usize)], fixed: &[(usize, usize)]) -> Vec<(usize, usize)> {
    /// `(size, crossings, pairs)` of a candidate matching.
    type Ranked = (usize, usize, Vec<(usize, usize)>);

    struct Search<'a> {
        edges: &'a [(usize, usize)],
        fixed: &'a [(usize, usize)],
        current: Vec<(usize, usize)>,
        best: Option<Ranked>,
    }

    impl Search<'_> {
        fn run(&mut self, from: usize) {
            if from == self.edges.len() {
                let size = self.current.len();
                let cross = crossings_against(&self.current, self.fixed);
                let better = match &self.best {
                    None => true,
                    Some((bs, bc, bl)) => {
                        size > *bs || (size == *bs && (cross < *bc || (cross == *bc && self.current < *bl)))
                    }
                };
                if better {
                    self.best = Some((size, cross, self.current.clone()));
                }
                return;
            }
            let (c, r) = self.edges[from];
            if !self.current.iter().any(|&(x, y)| x == c || y == r) {
                self.current.push((c, r));
                self.run(from + 1);
                self.current.pop();
            }
            self.run(from + 1);
        }
    }

    let mut search = Search {
        edges,
        fixed,
        current: Vec::new(),
        best: None,
    };
    search.run(0);
    search.best.map(|b| b.2).unwrap_or_default()
}

/// Maximum matching by augmenting paths, then pairwise swaps that remove
/// crossings without changing the matching size.
fn greedy_matching(
    edges: &[(usize, usize)],
    fixed: &[(usize, usize)],
    n_cand: usize,
    n_ref: usize,
) -> Vec<(usize, usize)> {
    let mut adj = vec![Vec::new(); n_cand];
    let mut is_edge = vec![vec![false; n_ref]; n_cand];
    for &(c, r) in edges {
        adj[c].push(r);
        is_edge[c][r] = true;
    }

    fn augment(c: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &r in &adj[c] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if owner[r].is_none_or(|o| augment(o, adj, seen, owner)) {
                owner[r] = Some(c);
                return true;
            }
        }
        false
    }

    let mut owner: Vec<Option<usize>> = vec![None; n_ref];
    for c in 0..n_cand {
        if !adj[c].is_empty() {
            let mut seen = vec![false; n_ref];
            augment(c, &adj, &mut seen, &mut owner);
        }
    }
    let mut chosen: Vec<(usize, usize)> = owner
        .iter()
        .enumerate()
        .filter_map(|(r, o)| o.map(|c| (c, r)))
        .collect();
    chosen.sort_unstable();

    let cost = |pair: (usize, usize), others: &[(usize, usize)], skip: [usize; 2]| {
        others
            .iter()
            .enumerate()
            .filter(|(k, &o)| !skip.contains(k) && crosses(pair, o))
            .count()
            + fixed.iter().filter(|&&o| crosses(pair, o)).count()
    };

    loop {
        let mut improved = false;
        'outer: for a in 0..chosen.len() {
            for b in a + 1..chosen.len() {
                let (p, q) = (chosen[a], chosen[b]);
                if !crosses(p, q) || !is_edge[p.0][q.1] || !is_edge[q.0][p.1] {
                    continue;
                }
                let (p2, q2) = ((p.0, q.1), (q.0, p.1));
                let before = cost(p, &chosen, [a, b]) + cost(q, &chosen, [a, b]) + 1;
                let after = cost(p2, &chosen, [a, b]) + cost(q2, &chosen, [a, b]) + usize::from(crosses(p2, q2));
                if after < before {
                    chosen[a] = p2;
                    chosen[b] = q2;
                    improved = true;
                    break 'outer;
                }
            }
        }
        if !improved {
            break;
        }
    }
    chosen.sort_unstable();
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alignment::{StemRules, SynonymTable};

    fn toks(s: &str) -> Vec<Token> {
        s.split_whitespace()
            .enumerate()
            .map(|(i, w)| Token::new(w, i))
            .collect()
    }

    fn pairs(a: &WordAlignment) -> Vec<(usize, usize)> {
        a.pairs.iter().map(|p| (p.candidate, p.reference)).collect()
    }

    #[test]
    fn exact_match_case_folds() {
        let r = AlignmentResources::default();
        assert!(match_tokens(&Token::new("Cat", 0), &Token::new("cat", 0), MatchStage::Exact, &r));
    }

    #[test]
    fn stem_match_by_rule_or_lemma() {
        let r = AlignmentResources {
            stem_rules: StemRules::new([("ning", "")]),
            ..Default::default()
        };
        let a = Token::new("running", 0);
        let b = Token::new("run", 0);
        assert!(match_tokens(&a, &b, MatchStage::Stem, &r));
        let plain = AlignmentResources::default();
        assert!(!match_tokens(&a, &b, MatchStage::Stem, &plain));
        let a = a.with_lemma("run");
        let b = b.with_lemma("run");
        assert!(match_tokens(&a, &b, MatchStage::Stem, &plain));
    }

    #[test]
    fn synonym_match_by_table() {
        let mut synonyms = SynonymTable::new();
        synonyms.add_set(&["big", "large"]);
        let r = AlignmentResources {
            synonyms,
            ..Default::default()
        };
        assert!(match_tokens(&Token::new("big", 0), &Token::new("large", 0), MatchStage::Synonym, &r));
        assert!(!match_tokens(&Token::new("big", 0), &Token::new("small", 0), MatchStage::Synonym, &r));
    }

    #[test]
    fn identical_sentences_align_on_the_diagonal() {
        let a = align_words(&toks("the cat sat"), &toks("the cat sat"), &AlignmentResources::default());
        assert_eq!(pairs(&a), vec![(0, 0), (1, 1), (2, 2)]);
        assert_eq!(a.crossings(), 0);
        assert_eq!(a.count_stage(MatchStage::Exact), 3);
    }

    #[test]
    fn partial_overlap() {
        let a = align_words(&toks("the cat sat"), &toks("a cat sat"), &AlignmentResources::default());
        assert_eq!(pairs(&a), vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn forced_crossing() {
        let a = align_words(&toks("sat cat"), &toks("cat sat"), &AlignmentResources::default());
        assert_eq!(a.matched(), 2);
        assert_eq!(a.crossings(), 1);
    }

    #[test]
    fn duplicates_prefer_uncrossed_links() {
        let a = align_words(&toks("a b a"), &toks("a a b"), &AlignmentResources::default());
        assert_eq!(a.matched(), 3);
        assert_eq!(a.crossings(), 1);
        let a = align_words(&toks("x a y a"), &toks("a x a y"), &AlignmentResources::default());
        assert_eq!(pairs(&a), vec![(0, 1), (1, 0), (2, 3), (3, 2)]);
        assert_eq!(a.crossings(), 2);
    }

    #[test]
    fn later_stages_fill_remaining_tokens() {
        let mut synonyms = SynonymTable::new();
        synonyms.add_set(&["big", "large"]);
        let r = AlignmentResources {
            stem_rules: StemRules::new([("s", "")]),
            synonyms,
        };
        let a = align_words(&toks("big cats sleep"), &toks("large cat sleep"), &r);
        assert_eq!(pairs(&a), vec![(0, 0), (1, 1), (2, 2)]);
        assert_eq!(a.count_stage(MatchStage::Exact), 1);
        assert_eq!(a.count_stage(MatchStage::Stem), 1);
        assert_eq!(a.count_stage(MatchStage::Synonym), 1);
    }

    #[test]
    fn empty_sides_give_empty_alignment() {
        let r = AlignmentResources::default();
        assert_eq!(align_words(&[], &toks("a b"), &r).matched(), 0);
        assert_eq!(align_words(&toks("a b"), &[], &r).matched(), 0);
    }

    #[test]
    fn long_sentences_use_the_greedy_path() {
        let words = "a b a c a b d a e a f a";
        let c = toks(words);
        let a = align_words(&c, &c, &AlignmentResources::default());
        assert_eq!(a.matched(), c.len());
        assert_eq!(a.crossings(), 0);
        assert!(a.pairs.iter().all(|p| p.candidate == p.reference));
    }

    #[test]
    fn greedy_swaps_remove_crossings() {
        // Adjacency order makes the augmenting pass pick the crossed pair first.
        let edges = vec![(0, 1), (1, 0), (0, 0), (1, 1)];
        let m = greedy_matching(&edges, &[], 2, 2);
        assert_eq!(crossings_against(&m, &[]), 0);
        assert_eq!(m.len(), 2);
    }
}
