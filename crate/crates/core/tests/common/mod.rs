#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use cogease::model::{
    AnnotatedUnit, Chunk, Clause, DiscourseAnnotation, DiscourseRelation, Level, Registry, Token,
    WeightProfile, WordClass,
};

pub const VOCAB: [&str; 10] = ["the", "cat", "sat", "on", "a", "mat", "dog", "ran", "to", "it"];
const LABELS: [&str; 3] = ["cause", "purpose", "contrast"];
const ENTITIES: [&str; 5] = ["Ann", "Bob", "Paris", "bank", "river"];

pub fn words<R: Rng>(rng: &mut R, max_len: usize, vocab: &[&str]) -> Vec<String> {
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| vocab.choose(rng).unwrap().to_string()).collect()
}

pub fn tokens(words: &[String]) -> Vec<Token> {
    words.iter().enumerate().map(|(i, w)| Token::new(w.clone(), i)).collect()
}

/// Which optional layers a generated unit should carry.
#[derive(Debug, Clone, Copy)]
pub struct Layers {
    pub classes: bool,
    pub chunks: bool,
    pub clauses: bool,
    pub discourse: bool,
    pub entities: bool,
}

impl Layers {
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let chunks = rng.gen_bool(0.7);
        let clauses = chunks && rng.gen_bool(0.7);
        Self {
            classes: rng.gen_bool(0.5),
            chunks,
            clauses,
            discourse: clauses && rng.gen_bool(0.6),
            entities: rng.gen_bool(0.6),
        }
    }

    pub fn all() -> Self {
        Self { classes: true, chunks: true, clauses: true, discourse: true, entities: true }
    }
}

/// A structurally valid unit with the requested layers.
pub fn annotated_unit<R: Rng>(rng: &mut R, layers: Layers) -> AnnotatedUnit {
    let n = rng.gen_range(1..=14);
    let words: Vec<String> = (0..n).map(|_| VOCAB.choose(rng).unwrap().to_string()).collect();
    let mut unit = AnnotatedUnit::from_words(&words);
    if layers.classes {
        for t in &mut unit.tokens {
            t.word_class = if rng.gen_bool(0.4) { WordClass::Function } else { WordClass::Content };
            if rng.gen_bool(0.3) {
                t.lemma = Some(t.surface.clone());
            }
        }
    }
    if layers.chunks {
        let mut chunks = Vec::new();
        let mut start = 0;
        while start < n {
            let len = rng.gen_range(1..=(n - start).min(4));
            let span = start..start + len;
            let head = rng.gen_range(span.clone());
            let function_markers = span.clone().filter(|&i| i != head && rng.gen_bool(0.3)).collect();
            chunks.push(Chunk {
                id: chunks.len(),
                span,
                head,
                function_markers,
                is_named_entity: rng.gen_bool(0.2),
            });
            start += len;
        }
        if layers.clauses {
            let n_chunks = chunks.len();
            let n_clauses = rng.gen_range(1..=n_chunks.min(4));
            let mut members: Vec<Vec<usize>> = vec![Vec::new(); n_clauses];
            for c in 0..n_chunks {
                let k = if c < n_clauses { c } else { rng.gen_range(0..n_clauses) };
                members[k].push(c);
            }
            let clauses: Vec<Clause> = members
                .into_iter()
                .enumerate()
                .map(|(id, chunk_ids)| {
                    let parent = (id > 0 && rng.gen_bool(0.6)).then(|| rng.gen_range(0..id));
                    Clause {
                        id,
                        chunk_ids,
                        parent,
                        relation_label: parent.and_then(|_| {
                            rng.gen_bool(0.7).then(|| LABELS.choose(rng).unwrap().to_string())
                        }),
                    }
                })
                .collect();
            if layers.discourse {
                let k = clauses.len();
                let relations = (0..rng.gen_range(0..=3))
                    .map(|_| DiscourseRelation {
                        from: rng.gen_range(0..k),
                        to: rng.gen_range(0..k),
                        label: LABELS.choose(rng).unwrap().to_string(),
                    })
                    .collect();
                unit.discourse = Some(DiscourseAnnotation {
                    topic: rng.gen_bool(0.8).then(|| ENTITIES.choose(rng).unwrap().to_string()),
                    focus: rng.gen_bool(0.8).then(|| ENTITIES.choose(rng).unwrap().to_string()),
                    relations,
                });
            }
            unit.clauses = Some(clauses);
        }
        unit.chunks = Some(chunks);
    }
    if layers.entities {
        let k = rng.gen_range(1..=6);
        unit.entity_sequence = Some((0..k).map(|_| ENTITIES.choose(rng).unwrap().to_string()).collect());
    }
    unit
}

fn random_simplex<R: Rng>(rng: &mut R, names: &[String]) -> std::collections::BTreeMap<String, f64> {
    let raw: Vec<f64> = names.iter().map(|_| rng.gen_range(0.01..1.0)).collect();
    let total: f64 = raw.iter().sum();
    names.iter().cloned().zip(raw.into_iter().map(|v| v / total)).collect()
}

/// A valid profile with random simplexes, gamma and delta.
pub fn random_profile<R: Rng>(rng: &mut R) -> WeightProfile {
    let registry = Registry::standard();
    let mut profile = WeightProfile::uniform();
    let level_names: Vec<String> = Level::ALL.iter().map(|l| l.as_str().to_string()).collect();
    let w = random_simplex(rng, &level_names);
    for (&level, lw) in profile.levels.iter_mut() {
        lw.weight = w[level.as_str()];
        lw.gamma = rng.gen_range(0.0..=1.0);
        lw.delta = rng.gen_range(0.2..3.0);
        lw.alpha = random_simplex(rng, registry.adequacy(level));
        lw.beta = random_simplex(rng, registry.fluency(level));
    }
    profile.entity_flow_fluency = rng.gen_bool(0.5);
    profile
}
