//! Depth-first search with explicit S/U/T bookkeeping.
//!
//! `T` holds unvisited vertices, `U` is the stack, `S` holds finished
//! vertices. Every step moves exactly one vertex, `T -> U` or `U -> S`, and
//! steps are numbered from 1. The trace stores the event log; full set
//! snapshots are rebuilt on demand with [`DfsTrace::state_at`].
//!
//! When the top `v` of the stack looks for a neighbour, it queries the pairs
//! `(v, u)` for `u` in `T` in increasing priority order, starting after the
//! last vertex it queried. The online variant answers each query with one
//! bit of a [`BitSource`](crate::models::BitSource).

mod engine;
mod online;
mod verify;

pub use online::{explore_online, online_dfs};
pub use verify::{check_epochs, check_query_accounting, check_trace, Violation};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{Adjacency, Cycle, DiGraph, Graph, Path};
use engine::{Machine, Probe};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexSet {
    S,
    U,
    T,
}

/// One step: `vertex` moves `from -> to`. `queries` and `positives` are
/// running totals of pair queries and positive answers at that moment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfsEvent {
    pub vertex: usize,
    pub from: VertexSet,
    pub to: VertexSet,
    pub queries: u64,
    pub positives: u64,
}

/// Steps `start_step..=end_step` between two emptyings of the stack, and the
/// connected component discovered in them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Epoch {
    pub start_step: usize,
    pub end_step: usize,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfsTrace {
    pub n: usize,
    pub order: Vec<usize>,
    pub events: Vec<DfsEvent>,
    pub epochs: Vec<Epoch>,
    /// Longest stack seen, bottom first.
    pub max_u_path: Path,
    /// First step at which the stack reached its maximum size.
    pub max_u_step: usize,
    /// Pair queries issued while exploring (the final sweep of an online run
    /// is not included).
    pub query_count: u64,
}

/// The sets after a given step. `s` and `t` are sorted; `u` is bottom first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfsState {
    pub step: usize,
    pub s: Vec<usize>,
    pub u: Vec<usize>,
    pub t: Vec<usize>,
}

impl DfsTrace {
    pub fn steps(&self) -> usize {
        self.events.len()
    }

    pub fn state_at(&self, step: usize) -> Result<DfsState> {
        if step > self.events.len() {
            return invalid(format!("step {step} beyond the {} recorded", self.events.len()));
        }
        let mut set = vec![VertexSet::T; self.n];
        for e in &self.events[..step] {
            set[e.vertex] = e.to;
        }
        let pick = |which| (0..self.n).filter(|&v| set[v] == which).collect();
        Ok(DfsState {
            step,
            s: pick(VertexSet::S),
            u: engine::stack_after(&self.events, step),
            t: pick(VertexSet::T),
        })
    }

    /// All states from step 0 to the end, computed in one pass.
    pub fn states(&self) -> Vec<DfsState> {
        let mut set = vec![VertexSet::T; self.n];
        let mut stack = Vec::new();
        let mut out = Vec::with_capacity(self.events.len() + 1);
        let snapshot = |step, set: &[VertexSet], stack: &Vec<usize>| DfsState {
            step,
            s: (0..self.n).filter(|&v| set[v] == VertexSet::S).collect(),
            u: stack.clone(),
            t: (0..self.n).filter(|&v| set[v] == VertexSet::T).collect(),
        };
        out.push(snapshot(0, &set, &stack));
        for (i, e) in self.events.iter().enumerate() {
            set[e.vertex] = e.to;
            if e.to == VertexSet::U {
                stack.push(e.vertex);
            } else {
                stack.pop();
            }
            out.push(snapshot(i + 1, &set, &stack));
        }
        out
    }

    /// Component sizes in epoch order.
    pub fn component_sizes(&self) -> Vec<usize> {
        self.epochs.iter().map(|e| e.vertices.len()).collect()
    }

    pub fn largest_component(&self) -> usize {
        self.component_sizes().into_iter().max().unwrap_or(0)
    }

    /// Edges revealed by positive answers: each `T -> U` move onto a
    /// non-empty stack is joined to the previous top.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        let mut stack: Vec<usize> = Vec::new();
        let mut edges = Vec::new();
        for e in &self.events {
            if e.to == VertexSet::U {
                if let Some(&top) = stack.last() {
                    edges.push((top, e.vertex));
                }
                stack.push(e.vertex);
            } else {
                stack.pop();
            }
        }
        edges
    }
}

/// Neighbour lists in priority order, walked with a per-vertex pointer.
struct ListProbe<'a> {
    lists: Vec<&'a [usize]>,
    owned: Vec<Vec<usize>>,
    pos: Vec<usize>,
}

impl<'a> ListProbe<'a> {
    fn new<G: Adjacency>(g: &'a G, order: &[usize], rank: &[usize]) -> Self {
        let n = g.vertex_count();
        let identity = order.iter().enumerate().all(|(i, &v)| i == v);
        if identity {
            ListProbe {
                lists: (0..n).map(|v| g.successors(v)).collect(),
                owned: Vec::new(),
                pos: vec![0; n],
            }
        } else {
            let owned = (0..n)
                .map(|v| {
                    let mut l = g.successors(v).to_vec();
                    l.sort_unstable_by_key(|&u| rank[u]);
                    l
                })
                .collect();
            ListProbe {
                lists: Vec::new(),
                owned,
                pos: vec![0; n],
            }
        }
    }

    fn list(&self, v: usize) -> &[usize] {
        if self.owned.is_empty() {
            self.lists[v]
        } else {
            &self.owned[v]
        }
    }
}

impl Probe for ListProbe<'_> {
    fn probe(&mut self, m: &Machine, v: usize) -> Result<Option<usize>> {
        let mut p = self.pos[v];
        let found = {
            let list = self.list(v);
            while p < list.len() && m.set[list[p]] != VertexSet::T {
                p += 1;
            }
            list.get(p).copied()
        };
        self.pos[v] = p;
        Ok(found)
    }
}

fn dfs_on<G: Adjacency>(g: &G, order: Vec<usize>) -> Result<DfsTrace> {
    let machine = Machine::new(g.vertex_count(), order)?;
    let mut probe = ListProbe::new(g, &machine.order, &machine.rank);
    machine.run(&mut probe)
}

/// DFS of `g` with priority `order` (a permutation of `0..n`).
pub fn run_dfs(g: &Graph, order: &[usize]) -> Result<DfsTrace> {
    dfs_on(g, order.to_vec())
}

/// DFS with the identity priority order.
pub fn run_dfs_identity(g: &Graph) -> Result<DfsTrace> {
    dfs_on(g, (0..g.n()).collect())
}

/// DFS over out-neighbourhoods with the identity order.
pub fn run_dfs_directed(d: &DiGraph) -> Result<DfsTrace> {
    dfs_on(d, (0..d.n()).collect())
}

/// Longest directed path found as a stack of the DFS.
pub fn directed_long_path(d: &DiGraph) -> Result<Path> {
    Ok(run_dfs_directed(d)?.max_u_path)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongPathReport {
    /// Longest stack of the run.
    pub longest: Path,
    pub max_u: usize,
    /// First step with `|S| = |T|`.
    pub balanced_step: usize,
    pub balanced_s: usize,
    /// The stack at `balanced_step`.
    pub balanced_path: Path,
}

/// Runs the identity-order DFS and captures the stack at the first step with
/// `|S| = |T|`. If every two disjoint `k`-sets are joined by an edge, that
/// stack has at least `n - 2k + 1` edges.
pub fn long_path_dfs2(g: &Graph) -> Result<LongPathReport> {
    let trace = run_dfs_identity(g)?;
    let (mut s, mut t) = (0usize, g.n());
    let mut step = 0;
    if s != t {
        for (i, e) in trace.events.iter().enumerate() {
            match (e.from, e.to) {
                (VertexSet::T, _) => t -= 1,
                (_, VertexSet::S) => s += 1,
                _ => {}
            }
            if s == t {
                step = i + 1;
                break;
            }
        }
    }
    let balanced_path = Path::new_unchecked(engine::stack_after(&trace.events, step));
    Ok(LongPathReport {
        max_u: trace.max_u_path.vertex_count(),
        longest: trace.max_u_path,
        balanced_step: step,
        balanced_s: s,
        balanced_path,
    })
}

/// Closes a cycle with a chord between the first `k` and the last `k`
/// vertices of `path`, choosing the chord that gives the longest cycle
/// (ties: earliest first vertex). Returns `None` if there is no such chord.
pub fn cycle_from_path(g: &Graph, path: &Path, k: usize) -> Result<Option<Cycle>> {
    let vs = path.vertices();
    if k == 0 || vs.len() < 2 * k {
        return invalid(format!("path with {} vertices is shorter than 2k = {}", vs.len(), 2 * k));
    }
    if !path.is_valid_in(g) {
        return invalid("path is not a path of the graph");
    }
    let len = vs.len();
    let mut best: Option<(usize, usize)> = None;
    for i in 0..k {
        for j in (len - k..len).rev() {
            if j < i + 2 {
                break;
            }
            if g.has_edge(vs[i], vs[j]) {
                if best.is_none_or(|(bi, bj)| j - i > bj - bi) {
                    best = Some((i, j));
                }
                break;
            }
        }
    }
    match best {
        Some((i, j)) => Ok(Some(Cycle::new(g, vs[i..=j].to_vec())?)),
        None => Ok(None),
    }
}
