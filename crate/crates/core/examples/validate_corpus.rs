//! Corpus ingestion with line-numbered diagnostics: malformed or
//! inconsistent records are reported and skipped, the rest are kept.
//!
//! ```bash
//! cargo run --example validate_corpus
//! ```

use cogease::ingest::{parse_corpus, write_corpus};

const CORPUS: &str = r#"{"id": "ok", "candidate": {"text": "a cat ."}, "references": [{"text": "the cat ."}]}
{"id": "no-refs", "candidate": {"text": "a cat"}, "references": []}

{"id": "bad-chunk", "candidate": {"text": "a cat", "chunks": [{"span": [0, 5], "head": 1}]}, "references": [{"text": "the cat"}]}
{"id": "bad-score", "candidate": {"text": "x"}, "references": [{"text": "y"}], "human_score": 1.5}
{"id": "cycle", "candidate": {"text": "a b", "chunks": [{"span": [0, 1], "head": 0}, {"span": [1, 2], "head": 1}], "clauses": [{"chunks": [0], "parent": 1}, {"chunks": [1], "parent": 0}]}, "references": [{"text": "a b"}]}
not json
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let parsed = parse_corpus(CORPUS.as_bytes())?;
    println!("kept {} record(s), rejected {}", parsed.pairs.len(), parsed.rejected);
    for d in &parsed.diagnostics {
        println!("  {d}");
    }

    let mut normalized = Vec::new();
    write_corpus(&parsed.pairs, &mut normalized)?;
    print!("\nnormalized:\n{}", String::from_utf8(normalized)?);
    Ok(())
}
