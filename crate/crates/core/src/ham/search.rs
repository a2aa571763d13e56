use std::time::Instant;

use rand::Rng;

use super::{HamResult, HamStats, HamStatus};
use crate::graph::{Cycle, Graph};
use crate::rng::{rng_from_seed, LabRng};

/// Restarts allowed on top of the rotation budget.
pub const MAX_RESTARTS: u64 = 32;

/// `ceil(50 n ln n)` rotations.
pub fn default_budget(n: usize) -> u64 {
    (50.0 * n as f64 * (n.max(2) as f64).ln()).ceil() as u64
}

/// Current path plus, per vertex, the number of neighbours off the path.
struct Walk {
    path: Vec<usize>,
    on: Vec<bool>,
    free: Vec<u32>,
}

impl Walk {
    fn new(g: &Graph, path: Vec<usize>) -> Self {
        let n = g.n();
        let mut on = vec![false; n];
        for &v in &path {
            on[v] = true;
        }
        let free = (0..n)
            .map(|v| g.neighbors(v).iter().filter(|&&u| !on[u]).count() as u32)
            .collect();
        Walk { path, on, free }
    }

    fn push(&mut self, g: &Graph, w: usize) {
        self.path.push(w);
        self.on[w] = true;
        for &x in g.neighbors(w) {
            self.free[x] -= 1;
        }
    }

    /// Off-path neighbour of `v` with the fewest off-path neighbours.
    fn best_free_neighbor(&self, g: &Graph, v: usize) -> Option<usize> {
        if self.free[v] == 0 {
            return None;
        }
        g.neighbors(v)
            .iter()
            .copied()
            .filter(|&u| !self.on[u])
            .min_by_key(|&u| (self.free[u], u))
    }

    fn has_leaving_edge(&self) -> bool {
        self.path.iter().any(|&v| self.free[v] > 0)
    }
}

enum Step {
    Extend(Vec<usize>, usize),
    Cycle(Vec<usize>),
    Exhausted(Vec<Vec<usize>>),
    OutOfBudget,
}

pub(crate) struct Searcher<'a> {
    g: &'a Graph,
    rng: LabRng,
    budget: u64,
    pub stats: HamStats,
    /// Longest path seen so far.
    pub best: Vec<usize>,
}

impl<'a> Searcher<'a> {
    pub fn new(g: &'a Graph, budget: u64, seed: u64) -> Self {
        Searcher {
            g,
            rng: rng_from_seed(seed),
            budget,
            stats: HamStats::default(),
            best: Vec::new(),
        }
    }

    fn note(&mut self, path: &[usize]) {
        if path.len() > self.best.len() {
            self.best = path.to_vec();
        }
    }

    fn greedy(&mut self, walk: &mut Walk) {
        let g = self.g;
        loop {
            let end = *walk.path.last().expect("non-empty");
            if let Some(w) = walk.best_free_neighbor(g, end) {
                walk.push(g, w);
                self.stats.extensions += 1;
            } else if walk.free[walk.path[0]] > 0 {
                walk.path.reverse();
            } else {
                break;
            }
        }
        self.note(&walk.path.clone());
    }

    /// Rotations with `base[0]` fixed, breadth first over new endpoints.
    fn closure(&mut self, walk: &Walk, base: Vec<usize>, allow_cycle: bool) -> Step {
        let g = self.g;
        let h = base.len() - 1;
        let x0 = base[0];
        let mut seen_end = vec![false; g.n()];
        let mut pos = vec![usize::MAX; g.n()];
        seen_end[base[h]] = true;
        let mut witnesses = vec![base];
        let mut head = 0;
        while head < witnesses.len() {
            let q = witnesses[head].clone();
            head += 1;
            let y = q[h];
            if let Some(w) = walk.best_free_neighbor(g, y) {
                return Step::Extend(q, w);
            }
            if allow_cycle && h >= 2 && g.has_edge(y, x0) {
                return Step::Cycle(q);
            }
            for (i, &v) in q.iter().enumerate() {
                pos[v] = i;
            }
            for &z in g.neighbors(y) {
                let i = pos[z];
                if i == usize::MAX || i + 1 >= h || seen_end[q[i + 1]] {
                    continue;
                }
                if self.stats.rotations >= self.budget {
                    return Step::OutOfBudget;
                }
                self.stats.rotations += 1;
                seen_end[q[i + 1]] = true;
                let mut r = q.clone();
                r[i + 1..].reverse();
                witnesses.push(r);
            }
        }
        Step::Exhausted(witnesses)
    }

    /// Single closure, then the closure of every witness re-rooted at its end.
    fn rotate(&mut self, walk: &Walk) -> Step {
        let allow_cycle = walk.path.len() == self.g.n() || walk.has_leaving_edge();
        let witnesses = match self.closure(walk, walk.path.clone(), allow_cycle) {
            Step::Exhausted(w) => w,
            other => return other,
        };
        for q in witnesses {
            let mut r = q;
            r.reverse();
            match self.closure(walk, r, allow_cycle) {
                Step::Exhausted(_) => {}
                other => return other,
            }
        }
        Step::Exhausted(Vec::new())
    }

    /// Runs from `initial` (or a greedy path from a low-degree vertex) until
    /// a Hamilton cycle is found or the budget and restarts run out. With a
    /// vertex of degree below 2 no cycle can exist, and a single pass is made
    /// only to record a long path.
    pub fn run(&mut self, initial: Option<Vec<usize>>) -> Option<Vec<usize>> {
        let g = self.g;
        let n = g.n();
        if n == 0 {
            return None;
        }
        let restarts = if n < 3 || g.min_degree() < 2 { 0 } else { MAX_RESTARTS };
        let mut start = initial.unwrap_or_else(|| vec![(0..n).min_by_key(|&v| (g.degree(v), v)).expect("n > 0")]);
        loop {
            let mut walk = Walk::new(g, start);
            loop {
                self.greedy(&mut walk);
                match self.rotate(&walk) {
                    Step::Extend(q, w) => {
                        walk.path = q;
                        walk.push(g, w);
                        self.stats.extensions += 1;
                    }
                    Step::Cycle(c) if c.len() == n && n >= 3 => return Some(c),
                    Step::Cycle(c) => {
                        // Open the cycle at a vertex with an outside neighbour.
                        let i = c.iter().position(|&v| walk.free[v] > 0).expect("cycle with a leaving edge");
                        let w = walk.best_free_neighbor(g, c[i]).expect("free neighbour");
                        let mut path: Vec<usize> = c[i + 1..].to_vec();
                        path.extend_from_slice(&c[..=i]);
                        walk.path = path;
                        walk.push(g, w);
                        self.stats.extensions += 1;
                    }
                    Step::OutOfBudget => {
                        self.note(&walk.path.clone());
                        return None;
                    }
                    Step::Exhausted(_) => break,
                }
                self.note(&walk.path.clone());
            }
            self.note(&walk.path.clone());
            if self.stats.restarts >= restarts || self.stats.rotations >= self.budget {
                return None;
            }
            self.stats.restarts += 1;
            start = vec![self.rng.random_range(0..n)];
        }
    }
}

/// Rotation-extension search with `budget` rotations (default
/// [`default_budget`]). Reports `Hamiltonian` with a validated cycle or
/// `NotFound`.
pub fn rotation_extension_search(g: &Graph, budget: Option<u64>, seed: u64) -> HamResult {
    let started = Instant::now();
    if g.n() < 3 || g.min_degree() < 2 {
        let stats = HamStats { elapsed_ms: started.elapsed().as_secs_f64() * 1e3, ..HamStats::default() };
        return HamResult { status: HamStatus::NotFound, stats, added_edges: Vec::new() };
    }
    let mut searcher = Searcher::new(g, budget.unwrap_or_else(|| default_budget(g.n())), seed);
    let found = searcher.run(None);
    let mut stats = searcher.stats;
    stats.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    let status = match found {
        Some(c) => HamStatus::Hamiltonian { cycle: Cycle::new(g, c).expect("search returns valid cycles") },
        None => HamStatus::NotFound,
    };
    HamResult { status, stats, added_edges: Vec::new() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::{cycle_graph, path_graph, petersen};

    #[test]
    fn cycle_needs_no_rotations() {
        let r = rotation_extension_search(&cycle_graph(50), None, 1);
        assert!(r.is_hamiltonian());
        assert_eq!(r.stats.rotations, 0);
    }

    #[test]
    fn complete_graph() {
        let r = rotation_extension_search(&Graph::complete(40), None, 2);
        assert!(r.cycle().unwrap().is_hamilton_cycle_of(&Graph::complete(40)));
        assert!(r.stats.extensions <= 2 * 40);
    }

    #[test]
    fn never_claims_too_much() {
        assert!(!rotation_extension_search(&petersen(), None, 3).is_hamiltonian());
        assert!(!rotation_extension_search(&path_graph(10), None, 3).is_hamiltonian());
        assert!(!rotation_extension_search(&Graph::empty(2), None, 3).is_hamiltonian());
    }

    #[test]
    fn budget_is_respected() {
        let r = rotation_extension_search(&petersen(), Some(7), 3);
        assert!(r.stats.rotations <= 7);
    }
}
