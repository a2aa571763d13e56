use std::time::Instant;

use super::exact::{exact_hamiltonian, exact_longest_path_witness, EXACT_HAMILTON_CAP, EXACT_PATH_CAP};
use super::search::{default_budget, Searcher};
use super::{HamResult, HamStats, HamStatus};
use crate::error::{invalid, Result};
use crate::graph::{Cycle, Graph};
use crate::posa::boosters::visit_closure_pairs;
use crate::rng::derive_seed;

/// Adds boosters from `host` to `backbone` one at a time until the graph is
/// Hamiltonian.
///
/// Each round first looks for a Hamilton cycle (exactly for `n <= 20`,
/// otherwise by rotation-extension continuing from the best path so far).
/// If there is none, the first host edge among the double-closure pairs of
/// the current longest path (exact for `n <= 16`) is added. The run stops
/// with `NotFound` when no host edge qualifies or after `n` additions.
pub fn augment_with_boosters(backbone: &Graph, host: &Graph, seed: u64) -> Result<HamResult> {
    if backbone.n() != host.n() || !backbone.is_subgraph_of(host) {
        return invalid("backbone is not a subgraph of the host");
    }
    let started = Instant::now();
    let n = host.n();
    let round_budget = default_budget(n);
    let mut current = backbone.clone();
    let mut stats = HamStats::default();
    let mut added = Vec::new();
    let mut carried: Option<Vec<usize>> = None;
    let finish = |status, mut stats: HamStats, added| {
        stats.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
        Ok(HamResult { status, stats, added_edges: added })
    };
    loop {
        let best_path = if n <= EXACT_HAMILTON_CAP {
            let r = exact_hamiltonian(&current)?;
            stats.extensions += r.stats.extensions;
            if let HamStatus::Hamiltonian { cycle } = r.status {
                return finish(HamStatus::Hamiltonian { cycle: Cycle::new(host, cycle.vertices().to_vec())? }, stats, added);
            }
            if n <= EXACT_PATH_CAP { exact_longest_path_witness(&current)?.into_vertices() } else { Vec::new() }
        } else {
            let mut searcher = Searcher::new(&current, round_budget, derive_seed(seed, added.len() as u64));
            let found = searcher.run(carried.take());
            stats.rotations += searcher.stats.rotations;
            stats.extensions += searcher.stats.extensions;
            stats.restarts += searcher.stats.restarts;
            if let Some(c) = found {
                return finish(HamStatus::Hamiltonian { cycle: Cycle::new(host, c)? }, stats, added);
            }
            searcher.best
        };
        if added.len() >= n || best_path.len() < 3 {
            return finish(HamStatus::NotFound, stats, added);
        }
        let path = crate::graph::Path::new(&current, best_path.clone())?;
        let mut booster = None;
        visit_closure_pairs(&current, &path, |u, v| {
            if host.has_edge(u, v) {
                booster = Some((u, v));
                true
            } else {
                false
            }
        })?;
        let Some((u, v)) = booster else {
            return finish(HamStatus::NotFound, stats, added);
        };
        current.add_edge(u, v)?;
        added.push((u, v));
        stats.boosters_added += 1;
        carried = Some(best_path);
    }
}
