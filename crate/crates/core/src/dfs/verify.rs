//! Replay checks for DFS traces.
//!
//! * D1: each step moves one vertex, `T -> U` or `U -> S`; only the stack
//!   top may leave `U`.
//! * D2: no edge joins `S` and `T`. Since `S` only grows and `T` only
//!   shrinks, it suffices to check each vertex as it enters `S`.
//! * D3: `U` spans a path: each pushed vertex is a successor of the top.

use std::fmt;

use super::{DfsTrace, VertexSet};
use crate::graph::Adjacency;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub step: usize,
    pub property: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {} violated: {}", self.step, self.property, self.detail)
    }
}

impl std::error::Error for Violation {}

fn violation(step: usize, property: &'static str, detail: String) -> Result<(), Violation> {
    Err(Violation { step, property, detail })
}

/// Checks D1-D3 at every step against the host graph, and that the run ends
/// with every vertex in `S`.
pub fn check_trace<G: Adjacency>(g: &G, trace: &DfsTrace) -> Result<(), Violation> {
    let n = g.vertex_count();
    if trace.n != n {
        return violation(0, "D1", format!("trace has {} vertices, graph {n}", trace.n));
    }
    let mut set = vec![VertexSet::T; n];
    let mut stack: Vec<usize> = Vec::new();
    for (i, e) in trace.events.iter().enumerate() {
        let step = i + 1;
        let v = e.vertex;
        if v >= n || set[v] != e.from {
            return violation(step, "D1", format!("vertex {v} is not in {:?}", e.from));
        }
        match (e.from, e.to) {
            (VertexSet::T, VertexSet::U) => {
                if let Some(&top) = stack.last() {
                    if !g.has_edge(top, v) {
                        return violation(step, "D3", format!("{v} pushed onto {top} without an edge"));
                    }
                }
                stack.push(v);
            }
            (VertexSet::U, VertexSet::S) => {
                if stack.last() != Some(&v) {
                    return violation(step, "D1", format!("{v} left U but is not the top"));
                }
                if let Some(&u) = g.successors(v).iter().find(|&&u| set[u] == VertexSet::T) {
                    return violation(step, "D2", format!("{v} entered S with neighbour {u} in T"));
                }
                stack.pop();
            }
            (from, to) => return violation(step, "D1", format!("illegal move {from:?} -> {to:?}")),
        }
        set[v] = e.to;
    }
    if let Some(v) = set.iter().position(|&s| s != VertexSet::S) {
        return violation(trace.events.len(), "D1", format!("run ended with {v} outside S"));
    }
    Ok(())
}

/// While `T` is non-empty: `|S ∪ U| >= positives` and `|U| <= 1 + positives`.
pub fn check_query_accounting(trace: &DfsTrace) -> Result<(), Violation> {
    let (mut s, mut u, mut t) = (0u64, 0u64, trace.n as u64);
    for (i, e) in trace.events.iter().enumerate() {
        match e.to {
            VertexSet::U => {
                t -= 1;
                u += 1;
            }
            _ => {
                u -= 1;
                s += 1;
            }
        }
        if t == 0 {
            break;
        }
        if s + u < e.positives || u > 1 + e.positives {
            return violation(
                i + 1,
                "query accounting",
                format!("|S|={s} |U|={u} with {} positive answers", e.positives),
            );
        }
    }
    Ok(())
}

/// Epochs are contiguous, cover all steps, and their vertex sets are the
/// connected components (as returned by `components`, sorted).
pub fn check_epochs(trace: &DfsTrace, components: &[Vec<usize>]) -> Result<(), Violation> {
    let mut next = 1;
    for ep in &trace.epochs {
        if ep.start_step != next || ep.end_step < ep.start_step {
            return violation(ep.start_step, "epochs", format!("epoch starts at {}, expected {next}", ep.start_step));
        }
        next = ep.end_step + 1;
    }
    if next != trace.events.len() + 1 {
        return violation(next, "epochs", "epochs do not cover the run".into());
    }
    let mut ours: Vec<Vec<usize>> = trace.epochs.iter().map(|e| e.vertices.clone()).collect();
    let mut theirs = components.to_vec();
    ours.sort();
    theirs.sort();
    if ours != theirs {
        return violation(0, "epochs", "epoch vertex sets differ from the components".into());
    }
    Ok(())
}
