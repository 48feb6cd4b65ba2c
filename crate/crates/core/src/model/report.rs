use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::calculus::LevelScore;
use super::profile::Level;

/// Scores for one unit against its best-scoring reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitReport {
    pub id: String,
    /// Index into the unit's reference list that produced the reported scores.
    pub reference: usize,
    pub levels: BTreeMap<Level, LevelScore>,
    /// Level weights after renormalization over the active levels.
    pub weights: BTreeMap<Level, f64>,
    pub g: f64,
}

impl UnitReport {
    /// `Σ w'·G` recomputed from the stored level scores.
    pub fn recompute_g(&self) -> f64 {
        self.weights
            .iter()
            .map(|(l, w)| w * self.levels.get(l).map_or(0.0, |s| s.recompute().2))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub profile_hash: String,
    pub units: Vec<UnitReport>,
    pub corpus_mean_g: f64,
    /// Mean `G` per level over the units where that level was active.
    pub per_level_mean: BTreeMap<Level, f64>,
}

impl EvaluationReport {
    pub fn from_units(profile_hash: String, units: Vec<UnitReport>) -> Self {
        let corpus_mean_g = if units.is_empty() {
            0.0
        } else {
            units.iter().map(|u| u.g).sum::<f64>() / units.len() as f64
        };
        let mut sums: BTreeMap<Level, (f64, usize)> = BTreeMap::new();
        for unit in &units {
            for (&level, score) in unit.levels.iter().filter(|(_, s)| s.active) {
                let e = sums.entry(level).or_default();
                e.0 += score.g;
                e.1 += 1;
            }
        }
        let per_level_mean = sums
            .into_iter()
            .map(|(l, (sum, n))| (l, sum / n as f64))
            .collect();
        Self {
            profile_hash,
            units,
            corpus_mean_g,
            per_level_mean,
        }
    }
}
