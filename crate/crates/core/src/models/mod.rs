//! Seeded generators for `G(n,p)`, `G(n,m)`, `D(n,p)`, the random graph
//! process, multiple exposure, and the i.i.d. Bernoulli query stream.
//!
//! All generators are pure functions of their parameters and seed.
//!
//! Two pair orders appear here:
//! * `gnp` walks unordered pairs lexicographically, `(0,1), (0,2), ..., (1,2), ...`,
//!   skipping ahead by geometric gaps.
//! * `gnm` and the graph process index pairs colexicographically:
//!   `{u, v}` with `u < v` has index `v(v-1)/2 + u`.

mod process;
mod stream;

pub use process::{random_process, EdgeProcess};
pub use stream::{BernoulliStream, BitSource, FixedBits};

use std::collections::HashSet;

use rand::Rng;
use rand_distr::{Distribution, Geometric};

use crate::error::{invalid, Result};
use crate::graph::{DiGraph, Graph};
use crate::rng::{derive_seed, rng_from_seed, LabRng};

/// Colexicographic index of the pair `{u, v}`.
pub fn colex_index(u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    b * (b - 1) / 2 + a
}

/// Inverse of [`colex_index`].
pub fn pair_from_colex(index: usize) -> (usize, usize) {
    // Largest v with v(v-1)/2 <= index.
    let mut v = ((1.0 + (1.0 + 8.0 * index as f64).sqrt()) / 2.0) as usize;
    while v * (v - 1) / 2 > index {
        v -= 1;
    }
    while (v + 1) * v / 2 <= index {
        v += 1;
    }
    (index - v * (v - 1) / 2, v)
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        invalid(format!("probability {p} outside [0, 1]"))
    }
}

/// Advances through `total` slots, yielding the indices selected by
/// independent coin flips with success probability `p` (0 < p < 1).
fn geometric_hits(total: u64, p: f64, rng: &mut LabRng, mut hit: impl FnMut(u64)) {
    let geo = Geometric::new(p).expect("0 < p < 1");
    let mut next = 0u64;
    loop {
        let gap = geo.sample(rng);
        let Some(idx) = next.checked_add(gap) else { break };
        if idx >= total {
            break;
        }
        hit(idx);
        next = idx + 1;
    }
}

/// `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability(p)?;
    if n < 2 || p == 0.0 {
        return Ok(Graph::empty(n));
    }
    if p == 1.0 {
        return Ok(Graph::complete(n));
    }
    let total = (n * (n - 1) / 2) as u64;
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    // Row u holds pairs (u, u+1..n); rows are visited in order as indices grow.
    let mut row = 0usize;
    let mut row_start = 0u64;
    let mut row_len = (n - 1) as u64;
    geometric_hits(total, p, &mut rng, |idx| {
        while idx >= row_start + row_len {
            row_start += row_len;
            row += 1;
            row_len -= 1;
        }
        edges.push((row, row + 1 + (idx - row_start) as usize));
    });
    Graph::from_edges(n, edges)
}

/// `G(n, m)`: a uniformly random `m`-subset of the pairs, chosen with
/// Floyd's sampling algorithm over colex indices.
pub fn gnm(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let total = n * n.saturating_sub(1) / 2;
    if m > total {
        return invalid(format!("m = {m} exceeds the {total} available pairs"));
    }
    let mut rng = rng_from_seed(seed);
    let mut chosen: HashSet<usize> = HashSet::with_capacity(m);
    for j in (total - m)..total {
        let t = rng.random_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    Graph::from_edges(n, chosen.into_iter().map(pair_from_colex))
}

/// `D(n, p)` over the `n(n-1)` ordered pairs in lexicographic order.
pub fn dnp(n: usize, p: f64, seed: u64) -> Result<DiGraph> {
    check_probability(p)?;
    if n < 2 || p == 0.0 {
        return Ok(DiGraph::empty(n));
    }
    if p == 1.0 {
        return Ok(DiGraph::complete(n));
    }
    let per_row = (n - 1) as u64;
    let total = n as u64 * per_row;
    let mut rng = rng_from_seed(seed);
    let mut arcs = Vec::new();
    geometric_hits(total, p, &mut rng, |idx| {
        let u = (idx / per_row) as usize;
        let j = (idx % per_row) as usize;
        arcs.push((u, if j >= u { j + 1 } else { j }));
    });
    DiGraph::from_arcs(n, arcs)
}

/// Union of independent `G(n, p_i)`, the i-th drawn with seed
/// `derive_seed(seed, i)`. Each pair is present with probability
/// `1 - prod(1 - p_i)`.
pub fn multi_exposure(n: usize, probs: &[f64], seed: u64) -> Result<Graph> {
    if probs.is_empty() {
        return invalid("multiple exposure needs at least one probability");
    }
    for &p in probs {
        check_probability(p)?;
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (i, &p) in probs.iter().enumerate() {
        edges.extend(gnp(n, p, derive_seed(seed, i as u64))?.edges());
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(n, edges)
}

/// Marginal edge probability of a multiple exposure.
pub fn combined_probability(probs: &[f64]) -> f64 {
    1.0 - probs.iter().map(|p| 1.0 - p).product::<f64>()
}

/// Convenience constructor for [`BernoulliStream`].
pub fn bernoulli_stream(p: f64, seed: u64) -> Result<BernoulliStream> {
    BernoulliStream::new(p, seed)
}
