//! Rotation-extension machinery.
//!
//! For a path `x0 x1 ... xh` and a chord `(x_i, x_h)` with `i < h - 1`, the
//! elementary rotation at `x_i` yields `x0 ... x_i x_h x_{h-1} ... x_{i+1}`.
//! The rotation closure collects every endpoint reachable by a sequence of
//! rotations with `x0` fixed.
//!
//! Two closures are provided. [`rotation_closure`] explores whole paths and
//! is exact; the number of distinct paths can grow quickly, so it stops at a
//! state cap. [`endpoint_closure`] remembers one witness path per endpoint
//! and only rotates witnesses. It is fast but can miss endpoints that are
//! only reachable through a different path to an already-seen endpoint.

pub(crate) mod boosters;

pub use boosters::{boosters, closure_boosters, closure_boosters_from, exact_boosters, exact_boosters_capped, BoosterMode, EXACT_BOOSTER_CAP};

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Path};

/// Default limit on distinct paths explored by [`rotation_closure`].
pub const DEFAULT_STATE_CAP: usize = 500_000;

/// Up to this many vertices, [`auto_closure`] uses the exact closure.
pub const EXACT_CLOSURE_MAX_N: usize = 16;

/// Rotates `vs` at position `i` in place: reverses the tail after `i`.
pub(crate) fn rotate_in_place(vs: &mut [usize], i: usize) {
    debug_assert!(i + 2 < vs.len());
    let first = vs[0];
    let len = vs.len();
    vs[i + 1..].reverse();
    debug_assert_eq!((vs[0], vs.len()), (first, len));
}

pub fn elementary_rotation(g: &Graph, path: &Path, i: usize) -> Result<Path> {
    let vs = path.vertices();
    let h = path.len();
    if vs.is_empty() || i + 1 >= h {
        return invalid(format!("rotation index {i} needs i < h - 1 for h = {h}"));
    }
    let (pivot, end) = (vs[i], vs[h]);
    if !g.has_edge(pivot, end) {
        return Err(Error::InvalidRotation { pivot, end });
    }
    let mut out = vs.to_vec();
    rotate_in_place(&mut out, i);
    Ok(Path::new_unchecked(out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosaClosure {
    pub base_path: Path,
    /// `R`, sorted.
    pub ends: Vec<usize>,
    /// Predecessors of `R` along the base path, sorted.
    pub r_minus: Vec<usize>,
    /// Successors of `R` along the base path, sorted.
    pub r_plus: Vec<usize>,
    /// `witnesses[j]` is a rotated path ending at `ends[j]`.
    pub witnesses: Vec<Path>,
    /// True when produced by the exact path-state search.
    pub exact: bool,
    /// Distinct paths (exact) or endpoints (endpoint closure) visited.
    pub states: usize,
}

impl PosaClosure {
    pub fn contains(&self, v: usize) -> bool {
        self.ends.binary_search(&v).is_ok()
    }

    pub fn witness(&self, end: usize) -> Option<&Path> {
        self.ends.binary_search(&end).ok().map(|j| &self.witnesses[j])
    }

    fn assemble(g: &Graph, base: &Path, found: Vec<(usize, Vec<usize>)>, exact: bool, states: usize) -> Self {
        let vs = base.vertices();
        let mut pos = vec![usize::MAX; g.n()];
        for (i, &v) in vs.iter().enumerate() {
            pos[v] = i;
        }
        let mut found = found;
        found.sort_unstable_by_key(|(e, _)| *e);
        let ends: Vec<usize> = found.iter().map(|(e, _)| *e).collect();
        let mut r_minus: Vec<usize> = ends.iter().filter(|&&r| pos[r] > 0).map(|&r| vs[pos[r] - 1]).collect();
        let mut r_plus: Vec<usize> = ends.iter().filter(|&&r| pos[r] + 1 < vs.len()).map(|&r| vs[pos[r] + 1]).collect();
        r_minus.sort_unstable();
        r_plus.sort_unstable();
        PosaClosure {
            base_path: base.clone(),
            ends,
            r_minus,
            r_plus,
            witnesses: found.into_iter().map(|(_, p)| Path::new_unchecked(p)).collect(),
            exact,
            states,
        }
    }
}

fn check_path(g: &Graph, path: &Path) -> Result<()> {
    if path.is_empty() {
        return invalid("rotation closure of an empty path");
    }
    if !path.is_valid_in(g) {
        return invalid("base path is not a path of the graph");
    }
    Ok(())
}

/// Calls `f(i)` for every rotation pivot position of `vs`.
fn for_each_pivot(g: &Graph, vs: &[usize], pos: &[usize], mut f: impl FnMut(usize)) {
    let h = vs.len() - 1;
    for &z in g.neighbors(vs[h]) {
        let i = pos[z];
        if i != usize::MAX && i + 1 < h {
            f(i);
        }
    }
}

/// Exact closure with the default state cap.
pub fn rotation_closure(g: &Graph, path: &Path) -> Result<PosaClosure> {
    rotation_closure_capped(g, path, DEFAULT_STATE_CAP)
}

/// Breadth-first search over all rotated paths; capacity error once more
/// than `max_states` distinct paths are seen.
pub fn rotation_closure_capped(g: &Graph, path: &Path, max_states: usize) -> Result<PosaClosure> {
    check_path(g, path)?;
    let n = g.n();
    if n > 256 {
        return Err(Error::Capacity { what: "exact rotation closure vertices", cap: 256, n });
    }
    // Paths are stored as byte strings to keep the state set compact.
    let start: Box<[u8]> = path.vertices().iter().map(|&v| v as u8).collect();
    let widen = |q: &[u8]| q.iter().map(|&b| usize::from(b)).collect::<Vec<usize>>();
    let mut seen: HashSet<Box<[u8]>> = HashSet::new();
    let mut end_seen = vec![false; n];
    let first_end = path.end().expect("non-empty");
    end_seen[first_end] = true;
    let mut found: Vec<(usize, Vec<usize>)> = vec![(first_end, path.vertices().to_vec())];
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut pos = vec![usize::MAX; n];
    while let Some(cur) = queue.pop_front() {
        let wide = widen(&cur);
        for (i, &v) in wide.iter().enumerate() {
            pos[v] = i;
        }
        let mut pivots = Vec::new();
        for_each_pivot(g, &wide, &pos, |i| pivots.push(i));
        for i in pivots {
            let mut q = cur.clone();
            q[i + 1..].reverse();
            if seen.contains(&q) {
                continue;
            }
            if seen.len() >= max_states {
                return Err(Error::Capacity { what: "rotation closure states", cap: max_states, n });
            }
            let end = usize::from(q[q.len() - 1]);
            if !end_seen[end] {
                end_seen[end] = true;
                found.push((end, widen(&q)));
            }
            seen.insert(q.clone());
            queue.push_back(q);
        }
    }
    let states = seen.len();
    Ok(PosaClosure::assemble(g, path, found, true, states))
}

/// Breadth-first search over endpoints, rotating one witness per endpoint.
/// Every reported endpoint is reachable; some reachable ones may be missed.
pub fn endpoint_closure(g: &Graph, path: &Path) -> Result<PosaClosure> {
    check_path(g, path)?;
    let n = g.n();
    let start = path.vertices().to_vec();
    let mut end_seen = vec![false; n];
    end_seen[*start.last().expect("non-empty")] = true;
    let mut found: Vec<(usize, Vec<usize>)> = vec![(*start.last().expect("non-empty"), start)];
    let mut head = 0;
    let mut pos = vec![usize::MAX; n];
    while head < found.len() {
        let cur = found[head].1.clone();
        head += 1;
        for (i, &v) in cur.iter().enumerate() {
            pos[v] = i;
        }
        let mut pivots = Vec::new();
        for_each_pivot(g, &cur, &pos, |i| pivots.push(i));
        for i in pivots {
            let new_end = cur[i + 1];
            if !end_seen[new_end] {
                end_seen[new_end] = true;
                let mut q = cur.clone();
                rotate_in_place(&mut q, i);
                found.push((new_end, q));
            }
        }
    }
    let states = found.len();
    Ok(PosaClosure::assemble(g, path, found, false, states))
}

/// Exact closure for `n <= EXACT_CLOSURE_MAX_N` when it fits the state cap,
/// otherwise the endpoint closure.
pub fn auto_closure(g: &Graph, path: &Path) -> Result<PosaClosure> {
    if g.n() <= EXACT_CLOSURE_MAX_N {
        match rotation_closure(g, path) {
            Err(Error::Capacity { .. }) => {}
            other => return other,
        }
    }
    endpoint_closure(g, path)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosaReport {
    pub closure: PosaClosure,
    /// External neighbourhood of `R`.
    pub neighborhood: Vec<usize>,
    /// `R- ∪ R+`, sorted.
    pub allowed: Vec<usize>,
    /// Whether `N(R) ⊆ R- ∪ R+`.
    pub holds: bool,
}

/// Evaluates the containment `N(R) ⊆ R- ∪ R+`. It is guaranteed when `path`
/// is a longest path and the closure is exact.
pub fn posa_check(g: &Graph, path: &Path) -> Result<PosaReport> {
    let closure = auto_closure(g, path)?;
    let neighborhood = g.external_neighborhood(&closure.ends)?;
    let mut allowed: Vec<usize> = closure.r_minus.iter().chain(&closure.r_plus).copied().collect();
    allowed.sort_unstable();
    allowed.dedup();
    let holds = neighborhood.iter().all(|v| allowed.binary_search(v).is_ok());
    Ok(PosaReport { closure, neighborhood, allowed, holds })
}
