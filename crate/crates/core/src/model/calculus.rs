//! The score-combination calculus: F-mean, per-level adequacy and
//! disfluency sums, cognitive ease per level and linear aggregation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::profile::{Level, LevelWeights, WeightProfile};

#[derive(Debug, Error, PartialEq)]
pub enum CalculusError {
    #[error("parameter names {params:?} do not match weight names {weights:?}")]
    NameMismatch {
        params: Vec<String>,
        weights: Vec<String>,
    },
    #[error("no active level to aggregate")]
    NoActiveLevels,
    #[error("active levels {0:?} carry zero total weight")]
    ZeroActiveWeight(Vec<Level>),
}

/// Recall-weighted harmonic mean `10·P·R / (R + 9·P)`; zero when both
/// inputs are zero.
pub fn f_mean(precision: f64, recall: f64) -> f64 {
    let denom = recall + 9.0 * precision;
    if denom <= 0.0 {
        return 0.0;
    }
    (10.0 * precision * recall / denom).clamp(0.0, 1.0)
}

/// F-mean from raw counts. Zero when either side is empty.
pub fn f_mean_counts(matched: usize, candidate_total: usize, reference_total: usize) -> f64 {
    if candidate_total == 0 || reference_total == 0 {
        return 0.0;
    }
    f_mean(
        matched as f64 / candidate_total as f64,
        matched as f64 / reference_total as f64,
    )
}

/// Convex combination `Σ weight·param` over identically named entries.
pub fn weighted_sum(
    params: &BTreeMap<String, f64>,
    weights: &BTreeMap<String, f64>,
) -> Result<f64, CalculusError> {
    if !params.keys().eq(weights.keys()) {
        return Err(CalculusError::NameMismatch {
            params: params.keys().cloned().collect(),
            weights: weights.keys().cloned().collect(),
        });
    }
    Ok(params
        .values()
        .zip(weights.values())
        .fold(0.0, |acc, (p, w)| acc + p * w))
}

/// Cognitive ease of one level: `A·(1 − γ·B^δ)`.
pub fn level_cognition(adequacy: f64, disfluency: f64, gamma: f64, delta: f64) -> f64 {
    adequacy * (1.0 - gamma * disfluency.powf(delta))
}

/// Raw parameter values measured for one level, before any weighting.
/// Parameters that could not be measured are simply absent.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LevelMeasurement {
    pub p: BTreeMap<String, f64>,
    pub q: BTreeMap<String, f64>,
}

impl LevelMeasurement {
    pub fn with_p(mut self, name: &str, value: f64) -> Self {
        self.p.insert(name.to_string(), value);
        self
    }

    pub fn with_q(mut self, name: &str, value: f64) -> Self {
        self.q.insert(name.to_string(), value);
        self
    }
}

/// Restricts a simplex to `available` names and rescales it to sum to one.
/// When the surviving mass is zero it is spread evenly instead.
pub fn fold_simplex<'a>(
    weights: &BTreeMap<String, f64>,
    available: impl IntoIterator<Item = &'a String>,
) -> BTreeMap<String, f64> {
    let mut out: BTreeMap<String, f64> = available
        .into_iter()
        .map(|n| (n.clone(), weights.get(n).copied().unwrap_or(0.0).max(0.0)))
        .collect();
    let total: f64 = out.values().sum();
    let n = out.len() as f64;
    for v in out.values_mut() {
        *v = if total > 0.0 { *v / total } else { 1.0 / n };
    }
    out
}

/// Scores of one level for one unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelScore {
    pub active: bool,
    pub a: f64,
    pub b: f64,
    pub g: f64,
    pub p: BTreeMap<String, f64>,
    pub q: BTreeMap<String, f64>,
    /// Alpha actually applied after folding away unavailable parameters.
    pub alpha: BTreeMap<String, f64>,
    /// Beta actually applied after folding away unavailable parameters.
    pub beta: BTreeMap<String, f64>,
    pub gamma: f64,
    pub delta: f64,
}

impl LevelScore {
    pub fn inactive() -> Self {
        Self {
            active: false,
            a: 0.0,
            b: 0.0,
            g: 0.0,
            p: BTreeMap::new(),
            q: BTreeMap::new(),
            alpha: BTreeMap::new(),
            beta: BTreeMap::new(),
            gamma: 0.0,
            delta: 0.0,
        }
    }

    /// Combines measured parameters with the level's weights. With no
    /// measurable adequacy parameter `A` is 0; with no disfluency parameter
    /// `B` is 0.
    pub fn compose(measurement: &LevelMeasurement, weights: &LevelWeights) -> Self {
        let alpha = fold_simplex(&weights.alpha, measurement.p.keys());
        let beta = fold_simplex(&weights.beta, measurement.q.keys());
        let a = weighted_sum(&measurement.p, &alpha)
            .expect("folded simplex shares names")
            .clamp(0.0, 1.0);
        let b = weighted_sum(&measurement.q, &beta)
            .expect("folded simplex shares names")
            .clamp(0.0, 1.0);
        let g = level_cognition(a, b, weights.gamma, weights.delta).clamp(0.0, 1.0);
        Self {
            active: true,
            a,
            b,
            g,
            p: measurement.p.clone(),
            q: measurement.q.clone(),
            alpha,
            beta,
            gamma: weights.gamma,
            delta: weights.delta,
        }
    }

    /// Recomputes `(A, B, G)` from the stored parameters and weights.
    pub fn recompute(&self) -> (f64, f64, f64) {
        let a = self
            .p
            .iter()
            .map(|(k, v)| v * self.alpha.get(k).copied().unwrap_or(0.0))
            .fold(0.0, |acc, x| acc + x)
            .clamp(0.0, 1.0);
        let b = self
            .q
            .iter()
            .map(|(k, v)| v * self.beta.get(k).copied().unwrap_or(0.0))
            .fold(0.0, |acc, x| acc + x)
            .clamp(0.0, 1.0);
        (a, b, level_cognition(a, b, self.gamma, self.delta).clamp(0.0, 1.0))
    }
}

/// Overall score with the level weights it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub g: f64,
    /// Level weights renormalized over the active levels.
    pub weights: BTreeMap<Level, f64>,
}

/// Linear combination of level scores, with level weights renormalized over
/// the levels that are both active and present in the profile.
pub fn aggregate(
    level_scores: &BTreeMap<Level, LevelScore>,
    profile: &WeightProfile,
) -> Result<Aggregate, CalculusError> {
    let active: Vec<(Level, f64, f64)> = level_scores
        .iter()
        .filter(|(_, s)| s.active)
        .filter_map(|(&l, s)| profile.level(l).map(|lw| (l, lw.weight.max(0.0), s.g)))
        .collect();
    if active.is_empty() {
        return Err(CalculusError::NoActiveLevels);
    }
    let total: f64 = active.iter().map(|(_, w, _)| w).sum();
    if total <= 0.0 {
        return Err(CalculusError::ZeroActiveWeight(
            active.iter().map(|(l, _, _)| *l).collect(),
        ));
    }
    let weights: BTreeMap<Level, f64> = active.iter().map(|&(l, w, _)| (l, w / total)).collect();
    let g = active
        .iter()
        .map(|&(l, _, g)| weights[&l] * g)
        .sum::<f64>()
        .clamp(0.0, 1.0);
    Ok(Aggregate { g, weights })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn f_mean_examples() {
        assert_eq!(f_mean(1.0, 1.0), 1.0);
        assert_eq!(f_mean(0.0, 0.7), 0.0);
        assert_eq!(f_mean(0.0, 0.0), 0.0);
        assert!((f_mean(0.5, 1.0) - 5.0 / 5.5).abs() < 1e-12);
    }

    #[test]
    fn weighted_sum_examples() {
        assert_eq!(weighted_sum(&names(&[("x", 0.8)]), &names(&[("x", 1.0)])), Ok(0.8));
        let v = weighted_sum(
            &names(&[("x", 1.0), ("y", 0.0)]),
            &names(&[("x", 0.6), ("y", 0.4)]),
        )
        .unwrap();
        assert!((v - 0.6).abs() < 1e-12);
        let v = weighted_sum(
            &names(&[("x", 0.5), ("y", 0.5)]),
            &names(&[("x", 0.3), ("y", 0.7)]),
        )
        .unwrap();
        assert!((v - 0.5).abs() < 1e-12);
    }

    #[test]
    fn weighted_sum_rejects_name_mismatch() {
        let err = weighted_sum(&names(&[("x", 0.5)]), &names(&[("y", 1.0)]));
        assert!(matches!(err, Err(CalculusError::NameMismatch { .. })));
    }

    #[test]
    fn level_cognition_examples() {
        assert_eq!(level_cognition(0.0, 0.9, 0.5, 1.0), 0.0);
        assert_eq!(level_cognition(1.0, 0.0, 0.5, 1.0), 1.0);
        assert!((level_cognition(0.8, 0.5, 0.5, 1.0) - 0.6).abs() < 1e-12);
    }

    fn active(g: f64) -> LevelScore {
        LevelScore {
            g,
            ..LevelScore::compose(&LevelMeasurement::default(), &WeightProfile::uniform().levels[&Level::Word])
        }
    }

    fn profile_with(weights: &[(Level, f64)]) -> WeightProfile {
        let mut p = WeightProfile::uniform_over(&weights.iter().map(|w| w.0).collect::<Vec<_>>());
        for &(l, w) in weights {
            p.level_mut(l).unwrap().weight = w;
        }
        p
    }

    #[test]
    fn aggregate_examples() {
        let p = profile_with(&[(Level::Word, 1.0)]);
        let scores = BTreeMap::from([(Level::Word, active(0.7))]);
        assert!((aggregate(&scores, &p).unwrap().g - 0.7).abs() < 1e-12);

        let p = profile_with(&[(Level::Word, 0.5), (Level::Chunk, 0.5)]);
        let scores = BTreeMap::from([(Level::Word, active(0.4)), (Level::Chunk, active(0.8))]);
        assert!((aggregate(&scores, &p).unwrap().g - 0.6).abs() < 1e-12);

        let p = profile_with(&[(Level::Word, 0.6), (Level::Chunk, 0.3), (Level::Clause, 0.1)]);
        let scores = BTreeMap::from([
            (Level::Word, active(0.5)),
            (Level::Chunk, active(1.0)),
            (Level::Clause, LevelScore::inactive()),
        ]);
        let agg = aggregate(&scores, &p).unwrap();
        assert!((agg.g - (0.6 * 0.5 / 0.9 + 0.3 / 0.9)).abs() < 1e-12);
        assert!((agg.g - 0.6667).abs() < 1e-4);
        assert!(!agg.weights.contains_key(&Level::Clause));
    }

    #[test]
    fn aggregate_without_active_levels_fails() {
        let scores = BTreeMap::from([(Level::Word, LevelScore::inactive())]);
        assert_eq!(
            aggregate(&scores, &WeightProfile::uniform()),
            Err(CalculusError::NoActiveLevels)
        );
    }

    #[test]
    fn compose_folds_missing_parameters() {
        let weights = &WeightProfile::uniform().levels[&Level::Word];
        let m = LevelMeasurement::default()
            .with_p("lex", 0.4)
            .with_q("nword", 0.5)
            .with_q("term", 0.0);
        let s = LevelScore::compose(&m, weights);
        assert_eq!(s.alpha, names(&[("lex", 1.0)]));
        assert!((s.a - 0.4).abs() < 1e-12);
        assert!((s.b - 0.25).abs() < 1e-12);
        assert!((s.g - 0.4 * (1.0 - 0.5 * 0.25)).abs() < 1e-12);
        let (a, b, g) = s.recompute();
        assert_eq!((a, b, g), (s.a, s.b, s.g));
    }

    #[test]
    fn fold_spreads_zero_mass_evenly() {
        let w = names(&[("x", 0.0), ("y", 1.0)]);
        let avail = ["x".to_string()];
        assert_eq!(fold_simplex(&w, &avail), names(&[("x", 1.0)]));
    }
}
