use rand::seq::SliceRandom;

use super::pair_from_colex;
use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::rng::rng_from_seed;

/// A permutation of all `N = n(n-1)/2` pairs; prefix `i` is the graph `G_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeProcess {
    n: usize,
    order: Vec<(usize, usize)>,
}

/// Uniformly random graph process: Fisher-Yates shuffle of the colex pair list.
pub fn random_process(n: usize, seed: u64) -> Result<EdgeProcess> {
    if n < 2 {
        return invalid(format!("a graph process needs n >= 2, got {n}"));
    }
    let total = n * (n - 1) / 2;
    let mut order: Vec<(usize, usize)> = (0..total).map(pair_from_colex).collect();
    order.shuffle(&mut rng_from_seed(seed));
    Ok(EdgeProcess { n, order })
}

impl EdgeProcess {
    /// Wraps an explicit edge order; it must list every pair exactly once.
    pub fn from_order(n: usize, order: Vec<(usize, usize)>) -> Result<Self> {
        let total = n * n.saturating_sub(1) / 2;
        if order.len() != total {
            return invalid(format!("process order has {} pairs, expected {total}", order.len()));
        }
        // Graph construction rejects loops, duplicates and bad indices.
        Graph::from_edges(n, order.iter().copied())?;
        Ok(EdgeProcess { n, order })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `N`, the number of steps.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// The whole edge order; `order()[i - 1]` is the edge added at step `i`.
    pub fn order(&self) -> &[(usize, usize)] {
        &self.order
    }

    /// `G_m`: the first `m` edges.
    pub fn snapshot(&self, m: usize) -> Result<Graph> {
        if m > self.order.len() {
            return invalid(format!("snapshot {m} beyond process length {}", self.order.len()));
        }
        Graph::from_edges(self.n, self.order[..m].iter().copied())
    }
}
