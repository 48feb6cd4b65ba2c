//! Weight profiles: every free parameter of the scoring calculus.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::diagnostic::Diagnostic;

/// Tolerance used for every simplex check.
pub const SIMPLEX_TOLERANCE: f64 = 1e-9;

/// The five scoring levels, from surface words up to entity flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Word,
    Chunk,
    Clause,
    Discourse,
    EntityFlow,
}

impl Level {
    pub const ALL: [Level; 5] = [
        Level::Word,
        Level::Chunk,
        Level::Clause,
        Level::Discourse,
        Level::EntityFlow,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Level::Word => "word",
            Level::Chunk => "chunk",
            Level::Clause => "clause",
            Level::Discourse => "discourse",
            Level::EntityFlow => "entity_flow",
        }
    }

    /// 1-based level number used when labelling parameters (P11, Q23, ...).
    pub fn ordinal(self) -> usize {
        match self {
            Level::Word => 1,
            Level::Chunk => 2,
            Level::Clause => 3,
            Level::Discourse => 4,
            Level::EntityFlow => 5,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Known adequacy (`P`) and disfluency (`Q`) parameter names per level.
///
/// The standard registry covers what the built-in scorers produce. New
/// parameters can be registered so that profiles mentioning them validate;
/// they stay unavailable (and fold away) until something measures them.
#[derive(Debug, Clone, PartialEq)]
pub struct Registry {
    adequacy: BTreeMap<Level, Vec<String>>,
    fluency: BTreeMap<Level, Vec<String>>,
}

const STANDARD: [(Level, &[&str], &[&str]); 5] = [
    (Level::Word, &["lex", "pos"], &["nword", "uncom", "term"]),
    (
        Level::Chunk,
        &["head", "vibh"],
        &["words_per_chunk", "nchunk", "uncom_ne"],
    ),
    (
        Level::Clause,
        &["intra", "inter"],
        &["chunks_per_clause", "fragmentation", "long_dist"],
    ),
    (Level::Discourse, &["topic_focus", "relations"], &["linked_dist"]),
    (Level::EntityFlow, &["seq_len", "seq_edit"], &["seq"]),
];

impl Registry {
    pub fn standard() -> Self {
        let mut adequacy = BTreeMap::new();
        let mut fluency = BTreeMap::new();
        for (level, p, q) in STANDARD {
            adequacy.insert(level, p.iter().map(|s| s.to_string()).collect());
            fluency.insert(level, q.iter().map(|s| s.to_string()).collect());
        }
        Self { adequacy, fluency }
    }

    pub fn adequacy(&self, level: Level) -> &[String] {
        self.adequacy.get(&level).map_or(&[], Vec::as_slice)
    }

    pub fn fluency(&self, level: Level) -> &[String] {
        self.fluency.get(&level).map_or(&[], Vec::as_slice)
    }

    pub fn register_adequacy(&mut self, level: Level, name: impl Into<String>) {
        let name = name.into();
        let names = self.adequacy.entry(level).or_default();
        if !names.contains(&name) {
            names.push(name);
        }
    }

    pub fn register_fluency(&mut self, level: Level, name: impl Into<String>) {
        let name = name.into();
        let names = self.fluency.entry(level).or_default();
        if !names.contains(&name) {
            names.push(name);
        }
    }

    /// Conventional label such as `P21` or `Q13`; `None` for unknown names.
    pub fn label(&self, level: Level, name: &str) -> Option<String> {
        if let Some(pos) = self.adequacy(level).iter().position(|n| n == name) {
            return Some(format!("P{}{}", level.ordinal(), pos + 1));
        }
        self.fluency(level)
            .iter()
            .position(|n| n == name)
            .map(|pos| format!("Q{}{}", level.ordinal(), pos + 1))
    }
}

impl Default for Registry {
    fn default() -> Self {
        Self::standard()
    }
}

fn default_gamma() -> f64 {
    0.5
}

fn default_delta() -> f64 {
    1.0
}

/// Weights of a single level: its share `weight` of the overall score, the
/// disfluency shape `gamma`/`delta`, and the two simplexes `alpha` and `beta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelWeights {
    pub weight: f64,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default)]
    pub alpha: BTreeMap<String, f64>,
    #[serde(default)]
    pub beta: BTreeMap<String, f64>,
}

impl LevelWeights {
    /// Uniform alpha/beta over the registry's names for `level`.
    pub fn uniform(level: Level, weight: f64, registry: &Registry) -> Self {
        Self {
            weight,
            gamma: default_gamma(),
            delta: default_delta(),
            alpha: uniform_simplex(registry.adequacy(level)),
            beta: uniform_simplex(registry.fluency(level)),
        }
    }
}

fn uniform_simplex(names: &[String]) -> BTreeMap<String, f64> {
    let share = 1.0 / names.len().max(1) as f64;
    names.iter().map(|n| (n.clone(), share)).collect()
}

/// The complete free-parameter set of the calculus.
///
/// Levels missing from `levels` are never scored. `entity_flow_fluency`
/// enables the entity-sequence disfluency parameter; while it is off the
/// entity-flow level has no disfluency and its score equals its adequacy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightProfile {
    pub levels: BTreeMap<Level, LevelWeights>,
    #[serde(default)]
    pub entity_flow_fluency: bool,
}

impl WeightProfile {
    /// Equal level weights, uniform alpha/beta, gamma 0.5, delta 1.
    pub fn uniform() -> Self {
        let registry = Registry::standard();
        let w = 1.0 / Level::ALL.len() as f64;
        let levels = Level::ALL
            .iter()
            .map(|&l| (l, LevelWeights::uniform(l, w, &registry)))
            .collect();
        Self {
            levels,
            entity_flow_fluency: false,
        }
    }

    /// Uniform profile restricted to `levels`, each given the same weight.
    pub fn uniform_over(levels: &[Level]) -> Self {
        let registry = Registry::standard();
        let w = 1.0 / levels.len().max(1) as f64;
        Self {
            levels: levels
                .iter()
                .map(|&l| (l, LevelWeights::uniform(l, w, &registry)))
                .collect(),
            entity_flow_fluency: false,
        }
    }

    pub fn level(&self, level: Level) -> Option<&LevelWeights> {
        self.levels.get(&level)
    }

    pub fn level_mut(&mut self, level: Level) -> Option<&mut LevelWeights> {
        self.levels.get_mut(&level)
    }

    /// Copy of the profile with `level` dropped and the remaining level
    /// weights rescaled to sum to one.
    pub fn without_level(&self, level: Level) -> Self {
        let mut out = self.clone();
        out.levels.remove(&level);
        let total: f64 = out.levels.values().map(|l| l.weight).sum();
        if total > 0.0 {
            for lw in out.levels.values_mut() {
                lw.weight /= total;
            }
        }
        out
    }

    /// SHA-256 over the canonical JSON encoding, hex encoded.
    pub fn fingerprint(&self) -> String {
        let json = serde_json::to_vec(self).expect("profile serializes");
        hex::encode(Sha256::digest(&json))
    }
}

impl Default for WeightProfile {
    fn default() -> Self {
        Self::uniform()
    }
}

/// Checks a profile against the standard registry.
pub fn validate_profile(profile: &WeightProfile) -> Vec<Diagnostic> {
    validate_profile_with(profile, &Registry::standard())
}

/// Checks simplex sums, gamma/delta ranges and parameter names. One
/// diagnostic per violation.
pub fn validate_profile_with(profile: &WeightProfile, registry: &Registry) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if profile.levels.is_empty() {
        out.push(Diagnostic::new("profile defines no levels"));
        return out;
    }

    let w_sum: f64 = profile.levels.values().map(|l| l.weight).sum();
    if (w_sum - 1.0).abs() > SIMPLEX_TOLERANCE {
        out.push(Diagnostic::new(format!("level weight sum {w_sum} ≠ 1")));
    }

    for (&level, lw) in &profile.levels {
        if !lw.weight.is_finite() || lw.weight < 0.0 {
            out.push(Diagnostic::new(format!(
                "{level}: weight {} must be ≥ 0",
                lw.weight
            )));
        }
        if !(0.0..=1.0).contains(&lw.gamma) {
            out.push(Diagnostic::new(format!(
                "{level}: gamma {} outside [0, 1]",
                lw.gamma
            )));
        }
        if !(lw.delta.is_finite() && lw.delta > 0.0) {
            out.push(Diagnostic::new(format!(
                "{level}: delta {} must be > 0",
                lw.delta
            )));
        }
        check_simplex(level, "alpha", &lw.alpha, registry.adequacy(level), &mut out);
        check_simplex(level, "beta", &lw.beta, registry.fluency(level), &mut out);
    }
    out
}

fn check_simplex(
    level: Level,
    kind: &str,
    weights: &BTreeMap<String, f64>,
    known: &[String],
    out: &mut Vec<Diagnostic>,
) {
    for (name, &value) in weights {
        if !known.iter().any(|k| k == name) {
            out.push(Diagnostic::new(format!(
                "{level}: unknown {kind} parameter \"{name}\""
            )));
        }
        if !value.is_finite() || value < 0.0 {
            out.push(Diagnostic::new(format!(
                "{level}: {kind} {name} = {value} must be ≥ 0"
            )));
        }
    }
    if weights.is_empty() {
        return;
    }
    let sum: f64 = weights.values().sum();
    if (sum - 1.0).abs() > SIMPLEX_TOLERANCE {
        out.push(Diagnostic::new(format!("{level}: {kind} sum {sum} ≠ 1")));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_profile_is_valid() {
        assert!(validate_profile(&WeightProfile::uniform()).is_empty());
    }

    #[test]
    fn alpha_sum_violation_is_reported_once() {
        let mut p = WeightProfile::uniform();
        let word = p.level_mut(Level::Word).unwrap();
        word.alpha.insert("lex".into(), 0.7);
        word.alpha.insert("pos".into(), 0.7);
        let diags = validate_profile(&p);
        assert_eq!(diags.len(), 1, "{diags:?}");
        assert!(diags[0].message.contains("alpha sum 1.4 ≠ 1"), "{}", diags[0]);
    }

    #[test]
    fn unknown_parameter_name_is_reported() {
        let mut p = WeightProfile::uniform();
        let chunk = p.level_mut(Level::Chunk).unwrap();
        chunk.alpha = BTreeMap::from([("head".into(), 0.5), ("foo".into(), 0.5)]);
        let diags = validate_profile(&p);
        assert_eq!(diags.len(), 1, "{diags:?}");
        assert!(diags[0].message.contains("foo"));
    }

    #[test]
    fn gamma_and_delta_ranges() {
        let mut p = WeightProfile::uniform();
        p.level_mut(Level::Clause).unwrap().gamma = 1.5;
        p.level_mut(Level::Discourse).unwrap().delta = 0.0;
        assert_eq!(validate_profile(&p).len(), 2);
    }

    #[test]
    fn registered_extension_validates() {
        let mut registry = Registry::standard();
        registry.register_adequacy(Level::Word, "sentiment");
        let mut p = WeightProfile::uniform();
        p.level_mut(Level::Word).unwrap().alpha = BTreeMap::from([
            ("lex".into(), 0.4),
            ("pos".into(), 0.3),
            ("sentiment".into(), 0.3),
        ]);
        assert!(validate_profile_with(&p, &registry).is_empty());
        assert_eq!(validate_profile(&p).len(), 1);
        assert_eq!(registry.label(Level::Word, "sentiment").as_deref(), Some("P13"));
    }

    #[test]
    fn labels_follow_registry_order() {
        let r = Registry::standard();
        assert_eq!(r.label(Level::Chunk, "nchunk").as_deref(), Some("Q22"));
        assert_eq!(r.label(Level::EntityFlow, "seq_edit").as_deref(), Some("P52"));
        assert_eq!(r.label(Level::Word, "nope"), None);
    }

    #[test]
    fn without_level_renormalizes() {
        let p = WeightProfile::uniform().without_level(Level::Discourse);
        assert!(!p.levels.contains_key(&Level::Discourse));
        assert!(validate_profile(&p).is_empty());
        assert!((p.level(Level::Word).unwrap().weight - 0.25).abs() < 1e-12);
    }

    #[test]
    fn profile_json_uses_level_names() {
        let json = serde_json::to_string(&WeightProfile::uniform()).unwrap();
        assert!(json.contains("\"entity_flow\""));
        let back: WeightProfile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, WeightProfile::uniform());
        assert_eq!(back.fingerprint(), WeightProfile::uniform().fingerprint());
    }
}
