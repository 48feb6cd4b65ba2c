//! Layered annotations over a single sentence or paragraph.

use std::ops::Range;

/// Coarse lexical class of a token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum WordClass {
    Content,
    Function,
    #[default]
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub surface: String,
    pub lemma: Option<String>,
    pub word_class: WordClass,
    /// Position within the owning unit, 0-based.
    pub index: usize,
}

impl Token {
    pub fn new(surface: impl Into<String>, index: usize) -> Self {
        Self {
            surface: surface.into(),
            lemma: None,
            word_class: WordClass::Unknown,
            index,
        }
    }

    pub fn with_lemma(mut self, lemma: impl Into<String>) -> Self {
        self.lemma = Some(lemma.into());
        self
    }

    pub fn with_class(mut self, class: WordClass) -> Self {
        self.word_class = class;
        self
    }

    /// Simple case fold of the surface form.
    pub fn folded(&self) -> String {
        fold_case(&self.surface)
    }
}

/// Lowercases without locale-specific rules.
pub fn fold_case(s: &str) -> String {
    s.chars().flat_map(char::to_lowercase).collect()
}

/// A non-recursive phrase: a head word plus optional function markers
/// (prepositions, postpositions, case endings).
#[derive(Debug, Clone, PartialEq)]
pub struct Chunk {
    pub id: usize,
    /// Half-open token interval.
    pub span: Range<usize>,
    pub head: usize,
    pub function_markers: Vec<usize>,
    pub is_named_entity: bool,
}

impl Chunk {
    pub fn len(&self) -> usize {
        self.span.len()
    }

    pub fn is_empty(&self) -> bool {
        self.span.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Clause {
    pub id: usize,
    pub chunk_ids: Vec<usize>,
    pub parent: Option<usize>,
    pub relation_label: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscourseRelation {
    pub from: usize,
    pub to: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiscourseAnnotation {
    pub topic: Option<String>,
    pub focus: Option<String>,
    pub relations: Vec<DiscourseRelation>,
}

/// One sentence or paragraph with whatever annotation layers are available.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AnnotatedUnit {
    pub raw_text: String,
    pub tokens: Vec<Token>,
    pub chunks: Option<Vec<Chunk>>,
    pub clauses: Option<Vec<Clause>>,
    pub discourse: Option<DiscourseAnnotation>,
    pub entity_sequence: Option<Vec<String>>,
}

impl AnnotatedUnit {
    /// Builds a token-only unit from pre-split words.
    pub fn from_words<S: AsRef<str>>(words: &[S]) -> Self {
        let tokens: Vec<Token> = words
            .iter()
            .enumerate()
            .map(|(i, w)| Token::new(w.as_ref(), i))
            .collect();
        let raw_text = words
            .iter()
            .map(|w| w.as_ref())
            .collect::<Vec<_>>()
            .join(" ");
        Self {
            raw_text,
            tokens,
            ..Self::default()
        }
    }

    /// Chunk layer, treating an empty list as absent.
    pub fn chunk_layer(&self) -> Option<&[Chunk]> {
        self.chunks.as_deref().filter(|c| !c.is_empty())
    }

    /// Clause layer, treating an empty list as absent.
    pub fn clause_layer(&self) -> Option<&[Clause]> {
        self.clauses.as_deref().filter(|c| !c.is_empty())
    }

    /// Whether every token carries a content/function class.
    pub fn has_word_classes(&self) -> bool {
        !self.tokens.is_empty()
            && self
                .tokens
                .iter()
                .all(|t| t.word_class != WordClass::Unknown)
    }

    /// Index of the chunk containing `token`, if any.
    pub fn chunk_of_token(&self, token: usize) -> Option<usize> {
        self.chunk_layer()?
            .iter()
            .find(|c| c.span.contains(&token))
            .map(|c| c.id)
    }
}

/// A candidate translation with its references and optional source.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitPair {
    pub id: String,
    pub source: Option<AnnotatedUnit>,
    pub candidate: AnnotatedUnit,
    pub references: Vec<AnnotatedUnit>,
    pub human_score: Option<f64>,
}

impl UnitPair {
    pub fn new(id: impl Into<String>, candidate: AnnotatedUnit, reference: AnnotatedUnit) -> Self {
        Self {
            id: id.into(),
            source: None,
            candidate,
            references: vec![reference],
            human_score: None,
        }
    }
}
