//! Fitting profile weights to human judgments.
//!
//! Projected coordinate descent over the profile's simplexes: each move
//! nudges one coordinate by `±step`, clips at zero and rescales the
//! simplex, and is kept only if the mean squared error against the human
//! scores strictly drops. A pass without an accepted move halves the step;
//! the search ends once the step falls below `min_step` or after
//! `max_iterations` passes. Coordinates are visited in a seeded random
//! order, so a run is reproducible from its seed.

mod correlation;

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use correlation::{
    average_ranks, correlation, min_max_normalize, pearson, spearman, Correlation, CorrelationError,
};

use crate::diagnostic::Diagnostic;
use crate::levels::{Evaluator, UnitMeasurement};
use crate::model::{validate_profile, Level, LevelMeasurement, WeightProfile};

#[derive(Debug, Error)]
pub enum TuningError {
    #[error("tuning dataset is empty")]
    EmptyDataset,
    #[error("record {0} has no human_score")]
    MissingHumanScore(String),
    #[error("record {id}: human_score {score} outside [0, 1]")]
    ScoreOutOfRange { id: String, score: f64 },
    #[error("initial profile is invalid: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidProfile(Vec<Diagnostic>),
    #[error("initial profile cannot score record {0}")]
    Unscorable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Loss {
    #[default]
    SquaredError,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TuningConfig {
    /// Upper bound on full passes over the coordinates.
    pub max_iterations: usize,
    pub step: f64,
    pub min_step: f64,
    pub seed: u64,
    pub loss: Loss,
    /// Parameter paths held fixed: `w.<level>`, `alpha.<level>.<name>`,
    /// `beta.<level>.<name>`, `gamma.<level>`.
    pub frozen: BTreeSet<String>,
    pub optimize_gamma: bool,
}

impl Default for TuningConfig {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            step: 0.05,
            min_step: 1e-6,
            seed: 0,
            loss: Loss::SquaredError,
            frozen: BTreeSet::new(),
            optimize_gamma: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TuningResult {
    pub profile: WeightProfile,
    pub initial_loss: f64,
    pub final_loss: f64,
    /// Correlation of the initial profile's scores with the human scores.
    pub initial_correlation: Option<Correlation>,
    /// Correlation of the fitted profile's scores with the human scores.
    pub correlation: Option<Correlation>,
    pub iterations: usize,
    pub accepted_moves: usize,
}

/// A measured unit with its human score.
#[derive(Debug, Clone)]
pub struct Judged {
    pub measurement: UnitMeasurement,
    pub human: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Coord {
    Weight(usize),
    Alpha(usize, usize),
    Beta(usize, usize),
    Gamma(usize),
}

/// Dense copy of the tunable part of a profile.
#[derive(Debug, Clone, PartialEq)]
struct Params {
    w: Vec<f64>,
    gamma: Vec<f64>,
    delta: Vec<f64>,
    alpha: Vec<Vec<f64>>,
    beta: Vec<Vec<f64>>,
}

/// Profile layout shared by the dense parameters and compiled features.
struct Layout {
    levels: Vec<Level>,
    alpha_names: Vec<Vec<String>>,
    beta_names: Vec<Vec<String>>,
    entity_flow_fluency: bool,
}

impl Layout {
    fn new(profile: &WeightProfile) -> Self {
        Self {
            levels: profile.levels.keys().copied().collect(),
            alpha_names: profile.levels.values().map(|l| l.alpha.keys().cloned().collect()).collect(),
            beta_names: profile.levels.values().map(|l| l.beta.keys().cloned().collect()).collect(),
            entity_flow_fluency: profile.entity_flow_fluency,
        }
    }

    fn params(&self, profile: &WeightProfile) -> Params {
        let lw: Vec<_> = profile.levels.values().collect();
        Params {
            w: lw.iter().map(|l| l.weight).collect(),
            gamma: lw.iter().map(|l| l.gamma).collect(),
            delta: lw.iter().map(|l| l.delta).collect(),
            alpha: lw.iter().map(|l| l.alpha.values().copied().collect()).collect(),
            beta: lw.iter().map(|l| l.beta.values().copied().collect()).collect(),
        }
    }

    fn write(&self, params: &Params, template: &WeightProfile) -> WeightProfile {
        let mut out = template.clone();
        for (i, level) in self.levels.iter().enumerate() {
            let lw = out.levels.get_mut(level).expect("layout level");
            lw.weight = params.w[i];
            lw.gamma = params.gamma[i];
            for (name, v) in self.alpha_names[i].iter().zip(&params.alpha[i]) {
                lw.alpha.insert(name.clone(), *v);
            }
            for (name, v) in self.beta_names[i].iter().zip(&params.beta[i]) {
                lw.beta.insert(name.clone(), *v);
            }
        }
        out
    }

    fn path(&self, coord: Coord) -> String {
        match coord {
            Coord::Weight(l) => format!("w.{}", self.levels[l]),
            Coord::Gamma(l) => format!("gamma.{}", self.levels[l]),
            Coord::Alpha(l, j) => format!("alpha.{}.{}", self.levels[l], self.alpha_names[l][j]),
            Coord::Beta(l, j) => format!("beta.{}.{}", self.levels[l], self.beta_names[l][j]),
        }
    }

    fn compile_level(&self, slot: usize, m: &LevelMeasurement) -> CompiledLevel {
        let index = |names: &[String], n: &String| names.iter().position(|x| x == n);
        let keep_q = self.levels[slot] != Level::EntityFlow || self.entity_flow_fluency;
        CompiledLevel {
            slot,
            p: m.p.iter().map(|(n, v)| (index(&self.alpha_names[slot], n), *v)).collect(),
            q: if keep_q {
                m.q.iter().map(|(n, v)| (index(&self.beta_names[slot], n), *v)).collect()
            } else {
                Vec::new()
            },
        }
    }

    fn compile(&self, unit: &UnitMeasurement) -> Vec<Vec<CompiledLevel>> {
        unit.references
            .iter()
            .map(|levels| {
                levels
                    .iter()
                    .filter_map(|(level, m)| {
                        let slot = self.levels.iter().position(|l| l == level)?;
                        Some(self.compile_level(slot, m))
                    })
                    .collect()
            })
            .collect()
    }
}

struct CompiledLevel {
    slot: usize,
    p: Vec<(Option<usize>, f64)>,
    q: Vec<(Option<usize>, f64)>,
}

/// Same folding rule as the calculus: restrict to measured parameters and
/// rescale, spreading evenly when the surviving mass is zero.
fn folded_sum(values: &[(Option<usize>, f64)], weights: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let weight = |i: Option<usize>| i.map_or(0.0, |i| weights[i].max(0.0));
    let total: f64 = values.iter().map(|&(i, _)| weight(i)).sum();
    let s = if total > 0.0 {
        values.iter().map(|&(i, v)| v * (weight(i) / total)).sum::<f64>()
    } else {
        values.iter().map(|&(_, v)| v).sum::<f64>() / values.len() as f64
    };
    s.clamp(0.0, 1.0)
}

fn unit_score(refs: &[Vec<CompiledLevel>], params: &Params) -> Option<f64> {
    let mut best: Option<f64> = None;
    for levels in refs {
        let total: f64 = levels.iter().map(|l| params.w[l.slot].max(0.0)).sum();
        if levels.is_empty() || total <= 0.0 {
            continue;
        }
        let g: f64 = levels
            .iter()
            .map(|l| {
                let a = folded_sum(&l.p, &params.alpha[l.slot]);
                let b = folded_sum(&l.q, &params.beta[l.slot]);
                let g = (a * (1.0 - params.gamma[l.slot] * b.powf(params.delta[l.slot]))).clamp(0.0, 1.0);
                params.w[l.slot].max(0.0) / total * g
            })
            .sum::<f64>()
            .clamp(0.0, 1.0);
        if best.is_none_or(|b| g > b) {
            best = Some(g);
        }
    }
    best
}

struct Problem {
    units: Vec<Vec<Vec<CompiledLevel>>>,
    human: Vec<f64>,
}

impl Problem {
    fn scores(&self, params: &Params) -> Option<Vec<f64>> {
        self.units.iter().map(|u| unit_score(u, params)).collect()
    }

    fn loss(&self, params: &Params) -> f64 {
        let mut sum = 0.0;
        for (u, h) in self.units.iter().zip(&self.human) {
            match unit_score(u, params) {
                Some(g) => sum += (g - h).powi(2),
                None => return f64::INFINITY,
            }
        }
        sum / self.human.len() as f64
    }

    fn correlation(&self, params: &Params) -> Option<Correlation> {
        correlation(&self.scores(params)?, &self.human).ok()
    }
}

/// Clips at zero and rescales the free entries so the whole simplex sums to
/// one, leaving frozen entries untouched. `None` if no free mass remains.
fn project(values: &mut [f64], frozen: &[bool]) -> Option<()> {
    let fixed: f64 = values.iter().zip(frozen).filter(|(_, &f)| f).map(|(v, _)| *v).sum();
    for (v, &f) in values.iter_mut().zip(frozen) {
        if !f {
            *v = v.max(0.0);
        }
    }
    let free: f64 = values.iter().zip(frozen).filter(|(_, &f)| !f).map(|(v, _)| *v).sum();
    let target = 1.0 - fixed;
    if free <= 0.0 || target < 0.0 {
        return None;
    }
    for (v, &f) in values.iter_mut().zip(frozen) {
        if !f {
            *v *= target / free;
        }
    }
    Some(())
}

fn perturb(params: &Params, coord: Coord, delta: f64, frozen: &Frozen) -> Option<Params> {
    let mut next = params.clone();
    match coord {
        Coord::Weight(l) => {
            next.w[l] += delta;
            project(&mut next.w, &frozen.w)?;
        }
        Coord::Alpha(l, j) => {
            next.alpha[l][j] += delta;
            project(&mut next.alpha[l], &frozen.alpha[l])?;
        }
        Coord::Beta(l, j) => {
            next.beta[l][j] += delta;
            project(&mut next.beta[l], &frozen.beta[l])?;
        }
        Coord::Gamma(l) => {
            next.gamma[l] = (next.gamma[l] + delta).clamp(0.0, 1.0);
        }
    }
    (next != *params).then_some(next)
}

struct Frozen {
    w: Vec<bool>,
    alpha: Vec<Vec<bool>>,
    beta: Vec<Vec<bool>>,
}

/// Coordinates worth visiting: unfrozen members of simplexes that still
/// have at least two free entries, plus gamma when enabled.
fn coordinates(layout: &Layout, config: &TuningConfig) -> (Vec<Coord>, Frozen) {
    let is_frozen = |c: Coord| config.frozen.contains(&layout.path(c));
    let n = layout.levels.len();
    let frozen = Frozen {
        w: (0..n).map(|l| is_frozen(Coord::Weight(l))).collect(),
        alpha: (0..n)
            .map(|l| (0..layout.alpha_names[l].len()).map(|j| is_frozen(Coord::Alpha(l, j))).collect())
            .collect(),
        beta: (0..n)
            .map(|l| (0..layout.beta_names[l].len()).map(|j| is_frozen(Coord::Beta(l, j))).collect())
            .collect(),
    };
    let free_count = |f: &[bool]| f.iter().filter(|&&x| !x).count();
    let mut coords = Vec::new();
    if free_count(&frozen.w) >= 2 {
        coords.extend((0..n).filter(|&l| !frozen.w[l]).map(Coord::Weight));
    }
    for l in 0..n {
        if free_count(&frozen.alpha[l]) >= 2 {
            coords.extend((0..frozen.alpha[l].len()).filter(|&j| !frozen.alpha[l][j]).map(|j| Coord::Alpha(l, j)));
        }
        if free_count(&frozen.beta[l]) >= 2 {
            coords.extend((0..frozen.beta[l].len()).filter(|&j| !frozen.beta[l][j]).map(|j| Coord::Beta(l, j)));
        }
        if config.optimize_gamma && !is_frozen(Coord::Gamma(l)) {
            coords.push(Coord::Gamma(l));
        }
    }
    (coords, frozen)
}

/// Fits `initial` to already-measured units.
pub fn fit_measurements(
    data: &[Judged],
    initial: &WeightProfile,
    config: &TuningConfig,
) -> Result<TuningResult, TuningError> {
    if data.is_empty() {
        return Err(TuningError::EmptyDataset);
    }
    for d in data {
        if !(0.0..=1.0).contains(&d.human) {
            return Err(TuningError::ScoreOutOfRange {
                id: d.measurement.id.clone(),
                score: d.human,
            });
        }
    }
    let diagnostics = validate_profile(initial);
    if !diagnostics.is_empty() {
        return Err(TuningError::InvalidProfile(diagnostics));
    }

    let layout = Layout::new(initial);
    let problem = Problem {
        units: data.iter().map(|d| layout.compile(&d.measurement)).collect(),
        human: data.iter().map(|d| d.human).collect(),
    };
    let mut params = layout.params(initial);
    if let Some(bad) = problem
        .units
        .iter()
        .position(|u| unit_score(u, &params).is_none())
    {
        return Err(TuningError::Unscorable(data[bad].measurement.id.clone()));
    }

    let (mut coords, frozen) = coordinates(&layout, config);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let initial_loss = problem.loss(&params);
    let initial_correlation = problem.correlation(&params);
    let mut loss = initial_loss;
    let mut step = config.step;
    let mut iterations = 0;
    let mut accepted_moves = 0;

    while iterations < config.max_iterations && !coords.is_empty() && loss > 0.0 {
        iterations += 1;
        coords.shuffle(&mut rng);
        let mut improved = false;
        for &coord in &coords {
            for delta in [step, -step] {
                let Some(candidate) = perturb(&params, coord, delta, &frozen) else {
                    continue;
                };
                let candidate_loss = problem.loss(&candidate);
                if candidate_loss < loss {
                    params = candidate;
                    loss = candidate_loss;
                    accepted_moves += 1;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step /= 2.0;
            if step < config.min_step {
                break;
            }
        }
    }

    let profile = if accepted_moves == 0 {
        initial.clone()
    } else {
        layout.write(&params, initial)
    };
    Ok(TuningResult {
        correlation: problem.correlation(&params),
        profile,
        initial_loss,
        final_loss: loss,
        initial_correlation,
        iterations,
        accepted_moves,
    })
}

/// Measures every pair (in parallel) and fits `initial` to the human scores.
pub fn fit_weights(
    dataset: &[crate::model::UnitPair],
    evaluator: &Evaluator,
    initial: &WeightProfile,
    config: &TuningConfig,
) -> Result<TuningResult, TuningError> {
    if dataset.is_empty() {
        return Err(TuningError::EmptyDataset);
    }
    if let Some(p) = dataset.iter().find(|p| p.human_score.is_none()) {
        return Err(TuningError::MissingHumanScore(p.id.clone()));
    }
    let data: Vec<Judged> = dataset
        .par_iter()
        .map(|p| Judged {
            measurement: evaluator.measure(p),
            human: p.human_score.unwrap_or_default(),
        })
        .collect();
    fit_measurements(&data, initial, config)
}

/// Mean squared error of a profile's unit scores against human scores.
pub fn mean_squared_error(data: &[Judged], profile: &WeightProfile) -> Option<f64> {
    let mut sum = 0.0;
    for d in data {
        sum += (d.measurement.score(profile).ok()?.g - d.human).powi(2);
    }
    Some(sum / data.len().max(1) as f64)
}

/// Names and values of the active level weights after renormalization.
pub fn active_weights(profile: &WeightProfile, levels: &[Level]) -> BTreeMap<Level, f64> {
    let total: f64 = levels
        .iter()
        .filter_map(|l| profile.level(*l))
        .map(|l| l.weight)
        .sum();
    levels
        .iter()
        .filter_map(|&l| profile.level(l).map(|lw| (l, lw.weight / total)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::LevelMeasurement;

    fn unit(id: usize, word: (f64, f64), chunk: (f64, f64)) -> UnitMeasurement {
        let levels = BTreeMap::from([
            (Level::Word, LevelMeasurement::default().with_p("lex", word.0).with_q("nword", word.1)),
            (Level::Chunk, LevelMeasurement::default().with_p("head", chunk.0).with_q("nchunk", chunk.1)),
        ]);
        UnitMeasurement {
            id: format!("u{id}"),
            references: vec![levels],
        }
    }

    fn dataset(profile: &WeightProfile) -> Vec<Judged> {
        (0..30)
            .map(|i| {
                let f = i as f64 / 30.0;
                let m = unit(i, (f, 1.0 - f), ((f * 7.0) % 1.0, (f * 3.0) % 1.0));
                let human = m.score(profile).unwrap().g;
                Judged { measurement: m, human }
            })
            .collect()
    }

    #[test]
    fn zero_loss_is_a_fixed_point() {
        let profile = WeightProfile::uniform();
        let data = dataset(&profile);
        let r = fit_measurements(&data, &profile, &TuningConfig::default()).unwrap();
        assert_eq!(r.initial_loss, 0.0);
        assert_eq!(r.final_loss, 0.0);
        assert_eq!(r.profile, profile);
        assert_eq!(r.accepted_moves, 0);
    }

    #[test]
    fn dense_loss_matches_calculus() {
        let profile = WeightProfile::uniform();
        let mut data = dataset(&profile);
        for (i, d) in data.iter_mut().enumerate() {
            d.human = (i as f64 * 0.37) % 1.0;
        }
        let layout = Layout::new(&profile);
        let problem = Problem {
            units: data.iter().map(|d| layout.compile(&d.measurement)).collect(),
            human: data.iter().map(|d| d.human).collect(),
        };
        let dense = problem.loss(&layout.params(&profile));
        let reference = mean_squared_error(&data, &profile).unwrap();
        assert!((dense - reference).abs() < 1e-12);
    }

    #[test]
    fn loss_never_increases_and_simplexes_hold() {
        let profile = WeightProfile::uniform();
        let mut data = dataset(&profile);
        for (i, d) in data.iter_mut().enumerate() {
            d.human = (i as f64 * 0.61) % 1.0;
        }
        let r = fit_measurements(&data, &profile, &TuningConfig::default()).unwrap();
        assert!(r.final_loss <= r.initial_loss);
        assert!(validate_profile(&r.profile).is_empty());
        let check = mean_squared_error(&data, &r.profile).unwrap();
        assert!((check - r.final_loss).abs() < 1e-9);
    }

    #[test]
    fn frozen_coordinates_stay_put() {
        let mut truth = WeightProfile::uniform();
        truth.level_mut(Level::Word).unwrap().weight = 0.4;
        truth.level_mut(Level::Chunk).unwrap().weight = 0.0;
        let data = dataset(&truth);
        let config = TuningConfig {
            frozen: BTreeSet::from(["w.word".to_string(), "alpha.word.lex".to_string()]),
            ..Default::default()
        };
        let r = fit_measurements(&data, &WeightProfile::uniform(), &config).unwrap();
        assert_eq!(r.profile.levels[&Level::Word].weight, 0.2);
        assert_eq!(r.profile.levels[&Level::Word].alpha["lex"], 0.5);
        assert!(validate_profile(&r.profile).is_empty());
    }

    #[test]
    fn gamma_moves_only_when_enabled() {
        let mut truth = WeightProfile::uniform();
        truth.level_mut(Level::Word).unwrap().gamma = 0.9;
        let data = dataset(&truth);
        let off = fit_measurements(&data, &WeightProfile::uniform(), &TuningConfig::default()).unwrap();
        assert!(off.profile.levels.values().all(|l| l.gamma == 0.5));
        let on = fit_measurements(
            &data,
            &WeightProfile::uniform(),
            &TuningConfig { optimize_gamma: true, ..Default::default() },
        )
        .unwrap();
        assert!(on.final_loss < off.final_loss);
    }

    #[test]
    fn rejects_bad_input() {
        let profile = WeightProfile::uniform();
        assert!(matches!(fit_measurements(&[], &profile, &TuningConfig::default()), Err(TuningError::EmptyDataset)));
        let mut data = dataset(&profile);
        data[0].human = 2.0;
        assert!(matches!(
            fit_measurements(&data, &profile, &TuningConfig::default()),
            Err(TuningError::ScoreOutOfRange { .. })
        ));
    }

    #[test]
    fn projection_keeps_frozen_mass() {
        let mut v = vec![0.5, 0.3, -0.1];
        project(&mut v, &[true, false, false]).unwrap();
        assert_eq!(v[0], 0.5);
        assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(v[2], 0.0);
    }
}
