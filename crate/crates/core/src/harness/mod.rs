//! Monte Carlo experiments, hitting times and tail bounds.
//!
//! Trials are independent: trial `i` uses `derive_seed(seed, i)` and nothing
//! else, runs on a rayon pool of `workers` threads, and its records are
//! emitted in trial order. The CSV output is therefore a function of the
//! configuration alone.

pub mod bounds;
mod experiments;
pub mod hitting;
mod record;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use bounds::{binomial, binomial_estimates_hold, tail_bound, tail_frequency, TailBound};
pub use experiments::{nearly_spanning_constant, window_max};
pub use hitting::{hamiltonicity_hitting_times, hitting_time, hitting_time_bisect, HittingTimes, MonotoneProperty};
pub use record::{csv_string, format_float, write_csv, TrialRecord, CSV_HEADER};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentName {
    HittingTime,
    Supercritical,
    NearlySpanning,
    StreamLemma,
    MinDegree,
    BackbonePipeline,
}

impl ExperimentName {
    pub const ALL: [ExperimentName; 6] = [
        ExperimentName::HittingTime,
        ExperimentName::Supercritical,
        ExperimentName::NearlySpanning,
        ExperimentName::StreamLemma,
        ExperimentName::MinDegree,
        ExperimentName::BackbonePipeline,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentName::HittingTime => "hitting-time",
            ExperimentName::Supercritical => "supercritical",
            ExperimentName::NearlySpanning => "nearly-spanning",
            ExperimentName::StreamLemma => "stream-lemma",
            ExperimentName::MinDegree => "min-degree",
            ExperimentName::BackbonePipeline => "backbone-pipeline",
        }
    }

    /// Required pass fraction per statistic.
    fn default_targets(self) -> &'static [(&'static str, f64)] {
        match self {
            ExperimentName::HittingTime => &[("tau2", 0.95), ("tau_h_upper", 1.0), ("certified", 0.95)],
            ExperimentName::Supercritical => &[("max_u_path_vertices", 0.95), ("largest_component", 0.95)],
            ExperimentName::NearlySpanning => &[("path_vertices", 1.0)],
            ExperimentName::StreamLemma => &[("window_max_ones", 0.95), ("prefix_deviation", 0.95)],
            ExperimentName::MinDegree => &[("min_degree", 0.9)],
            ExperimentName::BackbonePipeline => &[("backbone_edges", 1.0), ("boosters_added", 0.9)],
        }
    }
}

impl fmt::Display for ExperimentName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentName::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown experiment {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: ExperimentName,
    pub n: usize,
    pub epsilon: f64,
    pub trials: usize,
    pub seed: u64,
    /// Worker threads; 0 lets rayon decide. Does not affect output.
    pub workers: usize,
    /// Backbone degree for `backbone-pipeline`.
    pub d0: usize,
    /// Offsets `omega` for `min-degree`.
    pub offsets: Vec<f64>,
    /// Trials of the directed variant of `nearly-spanning`; default half.
    pub directed: Option<usize>,
    /// Overrides of the required pass fraction, by statistic.
    pub targets: BTreeMap<String, f64>,
}

impl ExperimentConfig {
    /// The parameters of the acceptance runs.
    pub fn new(name: ExperimentName) -> Self {
        let (n, epsilon, trials) = match name {
            ExperimentName::HittingTime => (1000, 0.1, 100),
            ExperimentName::Supercritical => (100_000, 0.2, 20),
            ExperimentName::NearlySpanning => (20_000, 0.1, 10),
            ExperimentName::StreamLemma => (10_000, 0.2, 50),
            ExperimentName::MinDegree => (10_000, 0.1, 100),
            ExperimentName::BackbonePipeline => (1000, 0.1, 50),
        };
        ExperimentConfig {
            name,
            n,
            epsilon,
            trials,
            seed: 0,
            workers: 0,
            d0: 4,
            offsets: vec![-4.0, 4.0],
            directed: None,
            targets: BTreeMap::new(),
        }
    }

    pub(crate) fn directed_trials(&self) -> usize {
        self.directed.unwrap_or(self.trials.div_ceil(2))
    }

    fn target(&self, statistic: &str) -> Option<f64> {
        self.targets.get(statistic).copied().or_else(|| {
            self.name.default_targets().iter().find(|(s, _)| *s == statistic).map(|&(_, t)| t)
        })
    }

    fn uses_epsilon(&self) -> bool {
        matches!(self.name, ExperimentName::Supercritical | ExperimentName::NearlySpanning | ExperimentName::StreamLemma)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub variant: String,
    pub statistic: String,
    pub trials: usize,
    pub min: f64,
    pub mean: f64,
    pub max: f64,
    /// Records carrying a pass/fail verdict, and how many passed.
    pub evaluated: usize,
    pub passed: usize,
    pub target: Option<f64>,
    pub met: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub config: ExperimentConfig,
    pub groups: Vec<GroupSummary>,
    pub all_targets_met: bool,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentOutput {
    pub summary: ExperimentSummary,
    pub records: Vec<TrialRecord>,
}

impl ExperimentOutput {
    pub fn csv(&self) -> Result<String> {
        csv_string(&self.records)
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let mut warnings = Vec::new();
    if cfg.uses_epsilon() && cfg.epsilon > 0.3 {
        let msg = format!("epsilon = {} is outside the small-epsilon regime of the bounds", cfg.epsilon);
        warn!("{msg}");
        warnings.push(msg);
    }
    let trial = |i: usize| -> Result<Vec<TrialRecord>> {
        match cfg.name {
            ExperimentName::HittingTime => experiments::hitting_time_trial(cfg, i),
            ExperimentName::Supercritical => experiments::supercritical_trial(cfg, i),
            ExperimentName::NearlySpanning => experiments::nearly_spanning_trial(cfg, i),
            ExperimentName::StreamLemma => experiments::stream_lemma_trial(cfg, i),
            ExperimentName::MinDegree => experiments::min_degree_trial(cfg, i),
            ExperimentName::BackbonePipeline => experiments::backbone_pipeline_trial(cfg, i),
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidInput(format!("worker pool: {e}")))?;
    let per_trial: Vec<Result<Vec<TrialRecord>>> = pool.install(|| (0..cfg.trials).into_par_iter().map(trial).collect());
    let mut records = Vec::new();
    for r in per_trial {
        records.extend(r?);
    }
    let groups = summarize(cfg, &records);
    let all_targets_met = groups.iter().all(|g| g.met != Some(false));
    Ok(ExperimentOutput { summary: ExperimentSummary { config: cfg.clone(), groups, all_targets_met, warnings }, records })
}

fn summarize(cfg: &ExperimentConfig, records: &[TrialRecord]) -> Vec<GroupSummary> {
    let mut groups: Vec<GroupSummary> = Vec::new();
    for r in records {
        let g = match groups.iter_mut().find(|g| g.variant == r.variant && g.statistic == r.statistic) {
            Some(g) => g,
            None => {
                groups.push(GroupSummary {
                    variant: r.variant.clone(),
                    statistic: r.statistic.clone(),
                    trials: 0,
                    min: f64::INFINITY,
                    mean: 0.0,
                    max: f64::NEG_INFINITY,
                    evaluated: 0,
                    passed: 0,
                    target: cfg.target(&r.statistic),
                    met: None,
                });
                groups.last_mut().expect("just pushed")
            }
        };
        g.trials += 1;
        g.min = g.min.min(r.value);
        g.max = g.max.max(r.value);
        g.mean += r.value;
        if let Some(pass) = r.pass {
            g.evaluated += 1;
            g.passed += pass as usize;
        }
    }
    for g in &mut groups {
        g.mean /= g.trials as f64;
        if g.evaluated > 0 {
            g.met = g.target.map(|t| g.passed as f64 >= t * g.evaluated as f64 - 1e-9);
        } else {
            g.target = None;
        }
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for e in ExperimentName::ALL {
            assert_eq!(e.as_str().parse::<ExperimentName>().unwrap(), e);
        }
        assert!("nope".parse::<ExperimentName>().is_err());
    }

    #[test]
    fn small_runs_are_deterministic() {
        for name in ExperimentName::ALL {
            let mut cfg = ExperimentConfig::new(name);
            cfg.n = if name == ExperimentName::StreamLemma { 200 } else { 60 };
            cfg.trials = 4;
            cfg.seed = 9;
            cfg.workers = 1;
            let a = run_experiment(&cfg).unwrap().csv().unwrap();
            cfg.workers = 3;
            let b = run_experiment(&cfg).unwrap().csv().unwrap();
            assert_eq!(a, b, "{name}");
            assert!(a.lines().count() > 4);
        }
    }

    #[test]
    fn epsilon_warning() {
        let mut cfg = ExperimentConfig::new(ExperimentName::Supercritical);
        cfg.n = 500;
        cfg.trials = 1;
        cfg.epsilon = 0.5;
        assert_eq!(run_experiment(&cfg).unwrap().summary.warnings.len(), 1);
    }

    #[test]
    fn window_counts() {
        assert_eq!(window_max(&[], 5), 0);
        assert_eq!(window_max(&[0, 4, 5, 9, 10], 5), 2);
        assert_eq!(window_max(&[0, 1, 2, 3], 10), 4);
    }

    #[test]
    fn nearly_spanning_constant_value() {
        assert!((nearly_spanning_constant(0.1) - 115.129).abs() < 1e-3);
        assert!((nearly_spanning_constant(0.9) - 0.5853).abs() < 1e-3);
    }
}
