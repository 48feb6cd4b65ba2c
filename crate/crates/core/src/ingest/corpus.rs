//! JSON Lines corpus records.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::validate::validate_annotations;
use super::IngestError;
use crate::diagnostic::Diagnostic;
use crate::model::{
    AnnotatedUnit, Chunk, Clause, DiscourseAnnotation, DiscourseRelation, Token, UnitPair, WordClass,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RawClass {
    Content,
    Function,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawToken {
    pub t: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cls: Option<RawClass>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawChunk {
    /// Half-open `[start, end)`.
    pub span: [usize; 2],
    pub head: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub func: Vec<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub ne: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawClause {
    pub chunks: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawRelation {
    pub from: usize,
    pub to: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RawDiscourse {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topic: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub focus: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<RawRelation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawUnit {
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tokens: Option<Vec<RawToken>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chunks: Option<Vec<RawChunk>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clauses: Option<Vec<RawClause>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discourse: Option<RawDiscourse>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entities: Option<Vec<String>>,
}

/// One corpus line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<RawUnit>,
    pub candidate: RawUnit,
    pub references: Vec<RawUnit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub human_score: Option<f64>,
}

fn is_terminal_punct(c: char) -> bool {
    matches!(c, '.' | ',' | ';' | ':' | '!' | '?' | '"' | '\'' | ')' | ']' | '…')
}

/// Whitespace tokenization with trailing punctuation split into its own token.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut words = Vec::new();
    for piece in text.split_whitespace() {
        let body = piece.trim_end_matches(is_terminal_punct);
        if body.is_empty() || body.len() == piece.len() {
            words.push(piece);
        } else {
            words.push(body);
            words.push(&piece[body.len()..]);
        }
    }
    words
        .into_iter()
        .enumerate()
        .map(|(i, w)| Token::new(w, i))
        .collect()
}

impl From<RawUnit> for AnnotatedUnit {
    fn from(raw: RawUnit) -> Self {
        let tokens = match raw.tokens {
            Some(tokens) => tokens
                .into_iter()
                .enumerate()
                .map(|(i, t)| Token {
                    surface: t.t,
                    lemma: t.lemma,
                    word_class: match t.cls {
                        Some(RawClass::Content) => WordClass::Content,
                        Some(RawClass::Function) => WordClass::Function,
                        None => WordClass::Unknown,
                    },
                    index: i,
                })
                .collect(),
            None => tokenize(&raw.text),
        };
        let chunks = raw.chunks.map(|chunks| {
            chunks
                .into_iter()
                .enumerate()
                .map(|(id, c)| Chunk {
                    id,
                    span: c.span[0]..c.span[1],
                    head: c.head,
                    function_markers: c.func,
                    is_named_entity: c.ne,
                })
                .collect()
        });
        let clauses = raw.clauses.map(|clauses| {
            clauses
                .into_iter()
                .enumerate()
                .map(|(id, c)| Clause {
                    id,
                    chunk_ids: c.chunks,
                    parent: c.parent,
                    relation_label: c.rel,
                })
                .collect()
        });
        let discourse = raw.discourse.map(|d| DiscourseAnnotation {
            topic: d.topic,
            focus: d.focus,
            relations: d
                .relations
                .into_iter()
                .map(|r| DiscourseRelation {
                    from: r.from,
                    to: r.to,
                    label: r.label,
                })
                .collect(),
        });
        AnnotatedUnit {
            raw_text: raw.text,
            tokens,
            chunks,
            clauses,
            discourse,
            entity_sequence: raw.entities,
        }
    }
}

impl From<&AnnotatedUnit> for RawUnit {
    fn from(unit: &AnnotatedUnit) -> Self {
        RawUnit {
            text: unit.raw_text.clone(),
            tokens: Some(
                unit.tokens
                    .iter()
                    .map(|t| RawToken {
                        t: t.surface.clone(),
                        lemma: t.lemma.clone(),
                        cls: match t.word_class {
                            WordClass::Content => Some(RawClass::Content),
                            WordClass::Function => Some(RawClass::Function),
                            WordClass::Unknown => None,
                        },
                    })
                    .collect(),
            ),
            chunks: unit.chunks.as_ref().map(|chunks| {
                chunks
                    .iter()
                    .map(|c| RawChunk {
                        span: [c.span.start, c.span.end],
                        head: c.head,
                        func: c.function_markers.clone(),
                        ne: c.is_named_entity,
                    })
                    .collect()
            }),
            clauses: unit.clauses.as_ref().map(|clauses| {
                clauses
                    .iter()
                    .map(|c| RawClause {
                        chunks: c.chunk_ids.clone(),
                        parent: c.parent,
                        rel: c.relation_label.clone(),
                    })
                    .collect()
            }),
            discourse: unit.discourse.as_ref().map(|d| RawDiscourse {
                topic: d.topic.clone(),
                focus: d.focus.clone(),
                relations: d
                    .relations
                    .iter()
                    .map(|r| RawRelation {
                        from: r.from,
                        to: r.to,
                        label: r.label.clone(),
                    })
                    .collect(),
            }),
            entities: unit.entity_sequence.clone(),
        }
    }
}

impl From<&UnitPair> for RawRecord {
    fn from(pair: &UnitPair) -> Self {
        RawRecord {
            id: pair.id.clone(),
            source: pair.source.as_ref().map(RawUnit::from),
            candidate: RawUnit::from(&pair.candidate),
            references: pair.references.iter().map(RawUnit::from).collect(),
            human_score: pair.human_score,
        }
    }
}

/// Converts and validates one record. Every violation is returned.
pub fn record_to_pair(raw: RawRecord) -> Result<UnitPair, Vec<Diagnostic>> {
    let mut problems = Vec::new();
    if raw.references.is_empty() {
        problems.push(Diagnostic::new("record has no references"));
    }
    if let Some(score) = raw.human_score {
        if !(0.0..=1.0).contains(&score) {
            problems.push(Diagnostic::new(format!("human_score {score} outside [0, 1]")));
        }
    }
    let mut check = |role: String, unit: &AnnotatedUnit| {
        problems.extend(
            validate_annotations(unit)
                .into_iter()
                .map(|d| Diagnostic::new(format!("{role}: {}", d.message))),
        );
    };
    let source = raw.source.map(AnnotatedUnit::from);
    if let Some(s) = &source {
        check("source".into(), s);
    }
    let candidate = AnnotatedUnit::from(raw.candidate);
    check("candidate".into(), &candidate);
    let references: Vec<AnnotatedUnit> = raw.references.into_iter().map(AnnotatedUnit::from).collect();
    for (i, r) in references.iter().enumerate() {
        check(format!("reference {i}"), r);
    }
    if !problems.is_empty() {
        return Err(problems);
    }
    Ok(UnitPair {
        id: raw.id,
        source,
        candidate,
        references,
        human_score: raw.human_score,
    })
}

/// Accepted records plus line-numbered diagnostics for rejected ones.
#[derive(Debug, Clone, Default)]
pub struct ParsedCorpus {
    pub pairs: Vec<UnitPair>,
    pub diagnostics: Vec<Diagnostic>,
    /// Number of non-blank lines that were rejected.
    pub rejected: usize,
}

/// Reads a JSON Lines corpus. Blank lines are ignored; records that fail
/// to parse or validate are skipped with diagnostics. Only a failure to
/// read the stream itself is fatal.
pub fn parse_corpus(reader: impl BufRead) -> Result<ParsedCorpus, IngestError> {
    let mut out = ParsedCorpus::default();
    for (n, line) in reader.lines().enumerate() {
        let line_no = n + 1;
        let line = line.map_err(|e| IngestError::Read {
            line: line_no,
            source: e,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawRecord = match serde_json::from_str(&line) {
            Ok(raw) => raw,
            Err(e) => {
                out.rejected += 1;
                out.diagnostics
                    .push(Diagnostic::new(format!("invalid record: {e}")).at_line(line_no));
                continue;
            }
        };
        let id = raw.id.clone();
        match record_to_pair(raw) {
            Ok(pair) => out.pairs.push(pair),
            Err(problems) => {
                out.rejected += 1;
                out.diagnostics.extend(
                    problems
                        .into_iter()
                        .map(|d| Diagnostic::new(format!("{id}: {}", d.message)).at_line(line_no)),
                );
            }
        }
    }
    Ok(out)
}

/// Writes pairs as JSON Lines with explicit tokens.
pub fn write_corpus(pairs: &[UnitPair], mut writer: impl Write) -> std::io::Result<()> {
    for pair in pairs {
        serde_json::to_writer(&mut writer, &RawRecord::from(pair))?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenizer_splits_terminal_punctuation() {
        let t: Vec<String> = tokenize("The cat sat. Really?!  ok")
            .into_iter()
            .map(|t| t.surface)
            .collect();
        assert_eq!(t, ["The", "cat", "sat", ".", "Really", "?!", "ok"]);
        assert_eq!(tokenize("...").len(), 1);
    }

    #[test]
    fn simple_record() {
        let line = r#"{"id":"u1","candidate":{"text":"the cat sat"},"references":[{"text":"the cat sat"}]}"#;
        let parsed = parse_corpus(line.as_bytes()).unwrap();
        assert!(parsed.diagnostics.is_empty());
        assert_eq!(parsed.pairs[0].candidate.tokens.len(), 3);
        assert_eq!(parsed.pairs[0].references[0].tokens.len(), 3);
    }

    #[test]
    fn chunk_out_of_bounds_is_skipped() {
        let line = r#"{"id":"u1","candidate":{"text":"the cat sat","chunks":[{"span":[0,5],"head":1}]},"references":[{"text":"the cat sat"}]}"#;
        let parsed = parse_corpus(line.as_bytes()).unwrap();
        assert!(parsed.pairs.is_empty());
        assert_eq!(parsed.rejected, 1);
        assert_eq!(parsed.diagnostics.len(), 1);
        assert_eq!(parsed.diagnostics[0].line, Some(1));
        assert!(parsed.diagnostics[0].message.contains("chunk span out of bounds"));
    }

    #[test]
    fn counts_valid_and_invalid_lines() {
        let text = concat!(
            r#"{"id":"a","candidate":{"text":"x"},"references":[{"text":"x"}]}"#, "\n",
            "\n",
            "not json\n",
            r#"{"id":"b","candidate":{"text":"y"},"references":[{"text":"y"}],"human_score":0.5}"#, "\n",
        );
        let parsed = parse_corpus(text.as_bytes()).unwrap();
        assert_eq!(parsed.pairs.len(), 2);
        assert_eq!(parsed.diagnostics.len(), 1);
        assert_eq!(parsed.diagnostics[0].line, Some(3));
        assert_eq!(parsed.pairs[1].human_score, Some(0.5));
    }

    #[test]
    fn record_level_checks() {
        let text = concat!(
            r#"{"id":"a","candidate":{"text":"x"},"references":[]}"#, "\n",
            r#"{"id":"b","candidate":{"text":"x"},"references":[{"text":"x"}],"human_score":3}"#, "\n",
        );
        let parsed = parse_corpus(text.as_bytes()).unwrap();
        assert!(parsed.pairs.is_empty());
        assert_eq!(parsed.rejected, 2);
    }

    #[test]
    fn explicit_tokens_and_layers() {
        let line = r#"{"id":"u","source":{"text":"s","entities":["A","B"]},
            "candidate":{"text":"in the house","tokens":[{"t":"in","cls":"function"},{"t":"the","cls":"function"},{"t":"house","lemma":"house","cls":"content"}],
              "chunks":[{"span":[0,3],"head":2,"func":[0],"ne":false}],
              "clauses":[{"chunks":[0]}],
              "discourse":{"topic":"house"},
              "entities":["A"]},
            "references":[{"text":"in the house"}]}"#
            .replace('\n', " ");
        let parsed = parse_corpus(line.as_bytes()).unwrap();
        assert!(parsed.diagnostics.is_empty(), "{:?}", parsed.diagnostics);
        let c = &parsed.pairs[0].candidate;
        assert!(c.has_word_classes());
        assert_eq!(c.chunks.as_ref().unwrap()[0].function_markers, vec![0]);
        assert_eq!(c.discourse.as_ref().unwrap().topic.as_deref(), Some("house"));
        assert_eq!(parsed.pairs[0].source.as_ref().unwrap().entity_sequence.as_ref().unwrap().len(), 2);
    }
}
