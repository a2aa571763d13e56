//! Exact oracles for small graphs, on `u32` adjacency masks.

use std::time::Instant;

use super::{HamResult, HamStats, HamStatus};
use crate::error::{Error, Result};
use crate::graph::{Cycle, Graph, Path};

pub const EXACT_HAMILTON_CAP: usize = 20;
pub const EXACT_PATH_CAP: usize = 16;

pub(crate) fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect()
}

fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap || n > 31 {
        return Err(Error::Capacity { what, cap: cap.min(31), n });
    }
    Ok(())
}

/// `ends[mask]` = vertices `v` such that some path with vertex set `mask`
/// ends at `v`. With `root = Some(r)` only paths starting at `r` count.
pub(crate) fn path_table(adj: &[u32], root: Option<usize>) -> Vec<u32> {
    let n = adj.len();
    let mut ends = vec![0u32; 1 << n];
    match root {
        Some(r) => ends[1 << r] = 1 << r,
        None => (0..n).for_each(|v| ends[1 << v] = 1 << v),
    }
    for mask in 1..ends.len() {
        let mut e = ends[mask];
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut out = adj[v] & !(mask as u32);
            while out != 0 {
                let w = out.trailing_zeros() as usize;
                out &= out - 1;
                ends[mask | 1 << w] |= 1 << w;
            }
        }
    }
    ends
}

fn longest_in_table(ends: &[u32]) -> Option<usize> {
    (1..ends.len())
        .filter(|&m| ends[m] != 0)
        .max_by_key(|&m| (m as u32).count_ones())
}

/// Longest path length (in edges) and Hamiltonicity from subset tables.
pub(crate) fn dp_summary(adj: &[u32]) -> (usize, bool) {
    let n = adj.len();
    if n == 0 {
        return (0, false);
    }
    let ends = path_table(adj, None);
    let best = longest_in_table(&ends).map_or(0, |m| (m as u32).count_ones() as usize - 1);
    let hamiltonian = n >= 3 && best == n - 1 && {
        let rooted = path_table(adj, Some(0));
        rooted[(1 << n) - 1] & adj[0] != 0
    };
    (best, hamiltonian)
}

/// Exact longest path length in edges (0 for graphs with at most one vertex).
pub fn exact_longest_path(g: &Graph) -> Result<usize> {
    exact_longest_path_capped(g, EXACT_PATH_CAP)
}

pub fn exact_longest_path_capped(g: &Graph, cap: usize) -> Result<usize> {
    check_cap("exact longest path", g.n(), cap)?;
    Ok(dp_summary(&masks(g)).0)
}

/// A longest path, reconstructed from the subset table.
pub fn exact_longest_path_witness(g: &Graph) -> Result<Path> {
    check_cap("exact longest path", g.n(), EXACT_PATH_CAP)?;
    let n = g.n();
    if n == 0 {
        return Ok(Path::new_unchecked(Vec::new()));
    }
    let adj = masks(g);
    let ends = path_table(&adj, None);
    let mut mask = longest_in_table(&ends).expect("single vertices are paths");
    let mut v = ends[mask].trailing_zeros() as usize;
    let mut rev = vec![v];
    while (mask as u32).count_ones() > 1 {
        let rest = mask & !(1 << v);
        let prev = (ends[rest] & adj[v]).trailing_zeros() as usize;
        rev.push(prev);
        mask = rest;
        v = prev;
    }
    rev.reverse();
    Path::new(g, rev)
}

/// Complete Hamiltonicity decision by backtracking.
pub fn exact_hamiltonian(g: &Graph) -> Result<HamResult> {
    exact_hamiltonian_capped(g, EXACT_HAMILTON_CAP)
}

pub fn exact_hamiltonian_capped(g: &Graph, cap: usize) -> Result<HamResult> {
    check_cap("exact Hamiltonicity", g.n(), cap)?;
    let start = Instant::now();
    let mut stats = HamStats::default();
    let cycle = hamilton_cycle_search(g, &mut stats);
    stats.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let status = match cycle {
        Some(vs) => HamStatus::Hamiltonian { cycle: Cycle::new(g, vs)? },
        None => HamStatus::NotHamiltonian,
    };
    Ok(HamResult { status, stats, added_edges: Vec::new() })
}

fn hamilton_cycle_search(g: &Graph, stats: &mut HamStats) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 3 || g.min_degree() < 2 || !g.is_connected() {
        return None;
    }
    let adj = masks(g);
    let full = (1u32 << n) - 1;
    let mut path = vec![0usize];
    extend(&adj, full, 1, &mut path, stats).then_some(path)
}

fn reaches_all(adj: &[u32], from: usize, allowed: u32, targets: u32) -> bool {
    let mut seen = 1u32 << from;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & allowed & !seen;
        seen |= new;
        frontier |= new;
    }
    seen & targets == targets
}

fn extend(adj: &[u32], full: u32, visited: u32, path: &mut Vec<usize>, stats: &mut HamStats) -> bool {
    let cur = *path.last().expect("non-empty");
    if visited == full {
        return adj[cur] & 1 != 0;
    }
    let unvisited = full & !visited;
    if path.len() > 1 {
        if adj[0] & unvisited == 0 {
            return false;
        }
        // Every unvisited vertex still needs two usable neighbours.
        let usable = unvisited | 1 | 1 << cur;
        let mut rest = unvisited;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (adj[w] & usable).count_ones() < 2 {
                return false;
            }
        }
        if !reaches_all(adj, cur, unvisited, unvisited) {
            return false;
        }
    }
    // Fewest onward options first.
    let mut cands: Vec<(u32, usize)> = Vec::new();
    let mut next = adj[cur] & unvisited;
    while next != 0 {
        let w = next.trailing_zeros() as usize;
        next &= next - 1;
        cands.push(((adj[w] & unvisited).count_ones(), w));
    }
    cands.sort_unstable();
    for (_, w) in cands {
        stats.extensions += 1;
        path.push(w);
        if extend(adj, full, visited | 1 << w, path, stats) {
            return true;
        }
        path.pop();
    }
    false
}
