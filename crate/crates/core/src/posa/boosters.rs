use std::collections::HashSet;

use super::auto_closure;
use crate::error::{Error, Result};
use crate::graph::{Graph, Path};
use crate::ham::exact::{dp_summary, exact_longest_path_witness, masks, EXACT_PATH_CAP};

pub const EXACT_BOOSTER_CAP: usize = 14;

/// How [`boosters`] finds boosters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoosterMode {
    /// Test every non-edge with the exact oracles; `n <= cap`.
    Exact { cap: usize },
    /// Pairs certified by double rotation closure of a longest path.
    Closure,
}

impl Default for BoosterMode {
    fn default() -> Self {
        BoosterMode::Exact { cap: EXACT_BOOSTER_CAP }
    }
}

/// Boosters as sorted pairs `(u, v)` with `u < v`.
pub fn boosters(g: &Graph, mode: BoosterMode) -> Result<Vec<(usize, usize)>> {
    match mode {
        BoosterMode::Exact { cap } => exact_boosters_capped(g, cap),
        BoosterMode::Closure => closure_boosters(g),
    }
}

pub fn exact_boosters(g: &Graph) -> Result<Vec<(usize, usize)>> {
    exact_boosters_capped(g, EXACT_BOOSTER_CAP)
}

/// Every non-edge `e` such that `g + e` is Hamiltonian or has a longer
/// longest path than `g`.
pub fn exact_boosters_capped(g: &Graph, cap: usize) -> Result<Vec<(usize, usize)>> {
    let n = g.n();
    if n > cap || n > EXACT_PATH_CAP {
        return Err(Error::Capacity { what: "exact boosters", cap: cap.min(EXACT_PATH_CAP), n });
    }
    let adj = masks(g);
    let (longest, hamiltonian) = dp_summary(&adj);
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if adj[u] >> v & 1 == 1 {
                continue;
            }
            if hamiltonian {
                out.push((u, v));
                continue;
            }
            let mut plus = adj.clone();
            plus[u] |= 1 << v;
            plus[v] |= 1 << u;
            let (l2, h2) = dp_summary(&plus);
            if h2 || l2 > longest {
                out.push((u, v));
            }
        }
    }
    Ok(out)
}

/// Closure boosters of a longest path: exact for `n <= 16`, otherwise based
/// on the stack path of a DFS (see [`closure_boosters_from`]).
pub fn closure_boosters(g: &Graph) -> Result<Vec<(usize, usize)>> {
    if g.n() < 2 {
        return Ok(Vec::new());
    }
    let path = if g.n() <= EXACT_PATH_CAP {
        exact_longest_path_witness(g)?
    } else {
        crate::dfs::run_dfs_identity(g)?.max_u_path
    };
    let mut out = closure_boosters_from(g, &path)?;
    out.sort_unstable();
    Ok(out)
}

/// Non-edges whose addition closes a cycle on `V(path)`: `(x0, r)` for
/// `r` in the closure `R`, and `(y, x)` for `x` in the closure of the
/// witness ending at `y`, re-rooted at `y`. Pairs come in discovery order
/// without repeats.
///
/// The cycle can be opened into a longer path when `V(path)` has an edge
/// leaving it, and is a Hamilton cycle when `V(path) = V`; if neither holds,
/// nothing is returned. The pairs are boosters of `g` when `path` is a
/// longest path; otherwise they lengthen `path` itself.
pub fn closure_boosters_from(g: &Graph, path: &Path) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    visit_closure_pairs(g, path, |u, v| {
        out.push((u, v));
        false
    })?;
    Ok(out)
}

/// Feeds each closure pair to `visit` until it returns `true`.
pub(crate) fn visit_closure_pairs(
    g: &Graph,
    path: &Path,
    mut visit: impl FnMut(usize, usize) -> bool,
) -> Result<()> {
    let vs = path.vertices();
    if vs.len() < 3 {
        return Ok(());
    }
    let spanning = vs.len() == g.n();
    if !spanning && g.external_neighborhood(vs)?.is_empty() {
        return Ok(());
    }
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut offer = |a: usize, b: usize, visit: &mut dyn FnMut(usize, usize) -> bool| {
        let pair = (a.min(b), a.max(b));
        a != b && !g.has_edge(a, b) && seen.insert(pair) && visit(pair.0, pair.1)
    };
    let x0 = vs[0];
    let closure = auto_closure(g, path)?;
    for &r in &closure.ends {
        if offer(x0, r, &mut visit) {
            return Ok(());
        }
    }
    for (&y, witness) in closure.ends.iter().zip(&closure.witnesses) {
        let second = auto_closure(g, &witness.reversed())?;
        for &x in &second.ends {
            if offer(y, x, &mut visit) {
                return Ok(());
            }
        }
    }
    Ok(())
}
