use std::time::Instant;

use super::hitting::{hamiltonicity_hitting_times, hitting_time, MonotoneProperty};
use super::{ExperimentConfig, TrialRecord};
use crate::dfs::{directed_long_path, explore_online, run_dfs_identity};
use crate::error::{invalid, Result};
use crate::expander::{sparse_backbone, BackboneConfig};
use crate::ham::augment_with_boosters;
use crate::models::{dnp, gnm, gnp, random_process, BernoulliStream};
use crate::rng::derive_seed;

/// Builds the records of one trial; `wall_ms` is filled in at the end.
pub(crate) struct Trial<'a> {
    cfg: &'a ExperimentConfig,
    pub trial: usize,
    pub seed: u64,
    started: Instant,
    records: Vec<TrialRecord>,
}

pub(crate) struct Row<'s> {
    pub variant: &'s str,
    pub p: Option<f64>,
    pub m: Option<u64>,
    pub statistic: &'s str,
    pub value: f64,
    pub threshold: Option<f64>,
    pub pass: Option<bool>,
    pub extra: String,
}

impl<'s> Row<'s> {
    pub fn new(variant: &'s str, statistic: &'s str, value: f64) -> Self {
        Row { variant, p: None, m: None, statistic, value, threshold: None, pass: None, extra: String::new() }
    }
    pub fn p(mut self, p: f64) -> Self {
        self.p = Some(p);
        self
    }
    pub fn m(mut self, m: u64) -> Self {
        self.m = Some(m);
        self
    }
    pub fn check(mut self, threshold: f64, pass: bool) -> Self {
        self.threshold = Some(threshold);
        self.pass = Some(pass);
        self
    }
    pub fn extra(mut self, extra: String) -> Self {
        self.extra = extra;
        self
    }
}

impl<'a> Trial<'a> {
    pub fn new(cfg: &'a ExperimentConfig, trial: usize) -> Self {
        Trial { cfg, trial, seed: derive_seed(cfg.seed, trial as u64), started: Instant::now(), records: Vec::new() }
    }

    pub fn push(&mut self, row: Row) {
        self.records.push(TrialRecord {
            experiment: self.cfg.name.to_string(),
            trial: self.trial,
            variant: row.variant.to_string(),
            n: self.cfg.n,
            p: row.p,
            m: row.m,
            seed: self.seed,
            statistic: row.statistic.to_string(),
            value: row.value,
            threshold: row.threshold,
            pass: row.pass,
            extra: row.extra,
            wall_ms: 0.0,
        });
    }

    pub fn finish(mut self) -> Vec<TrialRecord> {
        let ms = self.started.elapsed().as_secs_f64() * 1e3;
        for r in &mut self.records {
            r.wall_ms = ms;
        }
        self.records
    }
}

fn ln(n: usize) -> f64 {
    (n as f64).ln()
}

fn pairs(n: usize) -> u64 {
    n as u64 * (n as u64).saturating_sub(1) / 2
}

pub(crate) fn hitting_time_trial(cfg: &ExperimentConfig, trial: usize) -> Result<Vec<TrialRecord>> {
    let n = cfg.n;
    if n < 3 {
        return invalid(format!("hitting-time needs n >= 3, got {n}"));
    }
    let mut t = Trial::new(cfg, trial);
    let process = random_process(n, derive_seed(t.seed, 0))?;
    let h = hamiltonicity_hitting_times(&process, derive_seed(t.seed, 1))?;
    let (m1, m2) = (n as f64 * ln(n) / 2.0, n as f64 * ln(n));
    let tau2 = h.tau_min_degree_2 as f64;
    t.push(
        Row::new("process", "tau2", tau2)
            .check(m2, (m1..=m2).contains(&tau2))
            .extra(format!("window=[{},{}]", super::format_float(m1), super::format_float(m2))),
    );
    t.push(Row::new("process", "tau_connectivity", h.tau_connectivity as f64));
    t.push(Row::new("process", "tau_h_upper", h.tau_hamiltonian_upper as f64).check(tau2, h.tau_hamiltonian_upper >= h.tau_min_degree_2));
    t.push(Row::new("process", "certified", h.certified_equal as u8 as f64).check(1.0, h.certified_equal));
    Ok(t.finish())
}

pub(crate) fn supercritical_trial(cfg: &ExperimentConfig, trial: usize) -> Result<Vec<TrialRecord>> {
    let (n, eps) = (cfg.n, cfg.epsilon);
    if !(eps > 0.0 && eps < 1.0) {
        return invalid(format!("supercritical needs 0 < epsilon < 1, got {eps}"));
    }
    let mut t = Trial::new(cfg, trial);
    let p_sup = (1.0 + eps) / n as f64;
    let mut bits = BernoulliStream::new(p_sup.min(1.0), derive_seed(t.seed, 0))?;
    let trace = explore_online(n, &mut bits)?;
    let path = trace.max_u_path.vertex_count() as f64;
    let target = eps * eps * n as f64 / 5.0;
    t.push(Row::new("supercritical", "max_u_path_vertices", path).p(p_sup).check(target, path >= target));
    let p_sub = (1.0 - eps) / n as f64;
    let mut bits = BernoulliStream::new(p_sub, derive_seed(t.seed, 1))?;
    let trace = explore_online(n, &mut bits)?;
    let largest = trace.largest_component() as f64;
    let bound = 7.0 / (eps * eps) * ln(n);
    t.push(Row::new("subcritical", "largest_component", largest).p(p_sub).check(bound, largest <= bound));
    Ok(t.finish())
}

/// `C = 5 ln(1/eps) / eps`.
pub fn nearly_spanning_constant(eps: f64) -> f64 {
    5.0 * (1.0 / eps).ln() / eps
}

pub(crate) fn nearly_spanning_trial(cfg: &ExperimentConfig, trial: usize) -> Result<Vec<TrialRecord>> {
    let (n, eps) = (cfg.n, cfg.epsilon);
    if !(eps > 0.0 && eps < 1.0) {
        return invalid(format!("nearly-spanning needs 0 < epsilon < 1, got {eps}"));
    }
    let mut t = Trial::new(cfg, trial);
    let p = (nearly_spanning_constant(eps) / n as f64).min(1.0);
    let target = (1.0 - eps) * n as f64;
    let g = gnp(n, p, derive_seed(t.seed, 0))?;
    let len = run_dfs_identity(&g)?.max_u_path.vertex_count() as f64;
    t.push(Row::new("undirected", "path_vertices", len).p(p).check(target, len >= target));
    if trial < cfg.directed_trials() {
        let d = dnp(n, p, derive_seed(t.seed, 1))?;
        let len = directed_long_path(&d)?.vertex_count() as f64;
        t.push(Row::new("directed", "path_vertices", len).p(p).check(target, len >= target));
    }
    Ok(t.finish())
}

/// Largest number of `positions` (sorted) inside any window of `len`
/// consecutive bits.
pub fn window_max(positions: &[u64], len: u64) -> usize {
    let mut best = 0;
    let mut i = 0;
    for j in 0..positions.len() {
        while positions[j] - positions[i] >= len {
            i += 1;
        }
        best = best.max(j - i + 1);
    }
    best
}

pub(crate) fn stream_lemma_trial(cfg: &ExperimentConfig, trial: usize) -> Result<Vec<TrialRecord>> {
    let (n, eps) = (cfg.n, cfg.epsilon);
    if n < 100 {
        return invalid(format!("stream-lemma needs n >= 100, got {n}"));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return invalid(format!("stream-lemma needs 0 < epsilon < 1, got {eps}"));
    }
    let mut t = Trial::new(cfg, trial);
    let total = pairs(n);
    let k = (7.0 / (eps * eps) * ln(n)).ceil() as u64;
    let p_sub = (1.0 - eps) / n as f64;
    let ones = BernoulliStream::new(p_sub, derive_seed(t.seed, 0))?.ones_within(total)?;
    let worst = window_max(&ones, k * n as u64) as f64;
    t.push(
        Row::new("subcritical", "window_max_ones", worst)
            .p(p_sub)
            .m(total)
            .check(k as f64, worst < k as f64)
            .extra(format!("k={k},window={}", k * n as u64)),
    );
    let p_sup = (1.0 + eps) / n as f64;
    let n0 = (eps * (n as f64).powi(2) / 2.0).floor() as u64;
    let ones = BernoulliStream::new(p_sup, derive_seed(t.seed, 1))?.ones_within(n0.min(total))?.len() as f64;
    let deviation = (ones - eps * (1.0 + eps) * n as f64 / 2.0).abs();
    let bound = (n as f64).powf(2.0 / 3.0);
    t.push(
        Row::new("supercritical", "prefix_deviation", deviation)
            .p(p_sup)
            .m(n0)
            .check(bound, deviation <= bound)
            .extra(format!("ones={ones}")),
    );
    Ok(t.finish())
}

pub(crate) fn min_degree_trial(cfg: &ExperimentConfig, trial: usize) -> Result<Vec<TrialRecord>> {
    let n = cfg.n;
    if n < 3 {
        return invalid(format!("min-degree needs n >= 3, got {n}"));
    }
    let mut t = Trial::new(cfg, trial);
    let base = ln(n) + ln(n).ln();
    for (i, &omega) in cfg.offsets.iter().enumerate() {
        let x = base + omega;
        let p = (x / n as f64).clamp(0.0, 1.0);
        let m = ((x * n as f64 / 2.0).round().max(0.0) as u64).min(pairs(n));
        let s = derive_seed(t.seed, i as u64);
        let gp = gnp(n, p, derive_seed(s, 0))?;
        let gm = gnm(n, m as usize, derive_seed(s, 1))?;
        for (model, g) in [("gnp", gp), ("gnm", gm)] {
            let delta = g.min_degree() as f64;
            let variant = format!("{model}/omega={}", super::format_float(omega));
            let mut row = Row::new(&variant, "min_degree", delta);
            row = if model == "gnp" { row.p(p) } else { row.m(m) };
            if omega > 0.0 {
                row = row.check(2.0, delta >= 2.0);
            } else if omega < 0.0 {
                row = row.check(1.0, delta <= 1.0);
            }
            t.push(row);
        }
    }
    Ok(t.finish())
}

pub(crate) fn backbone_pipeline_trial(cfg: &ExperimentConfig, trial: usize) -> Result<Vec<TrialRecord>> {
    let n = cfg.n;
    if n < 3 {
        return invalid(format!("backbone-pipeline needs n >= 3, got {n}"));
    }
    let mut t = Trial::new(cfg, trial);
    let process = random_process(n, derive_seed(t.seed, 0))?;
    let tau2 = hitting_time(&process, MonotoneProperty::MinDegree(2))?;
    let snapshot = process.snapshot(tau2)?;
    let backbone = sparse_backbone(&snapshot, BackboneConfig { d0: cfg.d0, seed: derive_seed(t.seed, 1) })?;
    let edges = backbone.edge_count() as f64;
    let cap = (cfg.d0 * n) as f64;
    t.push(Row::new("tau2", "backbone_edges", edges).m(tau2 as u64).check(cap, edges <= cap && backbone.is_subgraph_of(&snapshot)));
    let r = augment_with_boosters(&backbone, &snapshot, derive_seed(t.seed, 2))?;
    let valid = r.cycle().is_some_and(|c| c.is_hamilton_cycle_of(&snapshot));
    let added = r.stats.boosters_added;
    t.push(
        Row::new("tau2", "boosters_added", added as f64)
            .m(tau2 as u64)
            .check(n as f64, valid && added <= n)
            .extra(format!("rotations={}", r.stats.rotations)),
    );
    Ok(t.finish())
}
