use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ham::{exact_hamiltonian, exact_longest_path, rotation_extension_search, EXACT_HAMILTON_CAP};
use crate::models::EdgeProcess;

/// Monotone increasing graph properties with supported hitting times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonotoneProperty {
    MinDegree(usize),
    Connected,
    /// A path with at least this many edges; decided exactly, so `n <= 16`.
    LongPath(usize),
}

impl MonotoneProperty {
    pub fn holds(&self, g: &Graph) -> Result<bool> {
        Ok(match *self {
            MonotoneProperty::MinDegree(d) => g.n() == 0 || g.min_degree() >= d,
            MonotoneProperty::Connected => g.is_connected(),
            MonotoneProperty::LongPath(l) => exact_longest_path(g)? >= l,
        })
    }
}

/// `min { i : G_i has the property }`: degree tracking for minimum degree,
/// union-find for connectivity, bisection otherwise.
pub fn hitting_time(proc: &EdgeProcess, prop: MonotoneProperty) -> Result<usize> {
    match prop {
        MonotoneProperty::MinDegree(d) => min_degree_scan(proc, d),
        MonotoneProperty::Connected => connectivity_scan(proc),
        MonotoneProperty::LongPath(_) => hitting_time_bisect(proc, prop),
    }
}

/// Binary search over snapshots; valid because the property is monotone.
pub fn hitting_time_bisect(proc: &EdgeProcess, prop: MonotoneProperty) -> Result<usize> {
    if !prop.holds(&proc.snapshot(proc.len())?)? {
        return Err(Error::NoHittingTime);
    }
    let (mut lo, mut hi) = (0, proc.len());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if prop.holds(&proc.snapshot(mid)?)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

fn min_degree_scan(proc: &EdgeProcess, d: usize) -> Result<usize> {
    let n = proc.n();
    if d == 0 || n == 0 {
        return Ok(0);
    }
    let mut deg = vec![0usize; n];
    let mut below = n;
    for (i, &(u, v)) in proc.order().iter().enumerate() {
        for w in [u, v] {
            deg[w] += 1;
            if deg[w] == d {
                below -= 1;
            }
        }
        if below == 0 {
            return Ok(i + 1);
        }
    }
    Err(Error::NoHittingTime)
}

fn connectivity_scan(proc: &EdgeProcess) -> Result<usize> {
    let n = proc.n();
    if n <= 1 {
        return Ok(0);
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for (i, &(u, v)) in proc.order().iter().enumerate() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            components -= 1;
            if components == 1 {
                return Ok(i + 1);
            }
        }
    }
    Err(Error::NoHittingTime)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HittingTimes {
    pub tau_min_degree_2: usize,
    pub tau_connectivity: usize,
    /// Smallest snapshot index at which a Hamilton cycle was found.
    pub tau_hamiltonian_upper: usize,
    /// A validated Hamilton cycle exists at `tau_min_degree_2`.
    pub certified_equal: bool,
}

/// Hitting times of minimum degree 2, connectivity and (an upper bound for)
/// Hamiltonicity. For `n <= 20` the Hamiltonicity time is exact. Above that
/// the heuristic is tried at `tau_2` and then at `tau_2 + n 2^j` until it
/// succeeds, ending at the complete graph.
pub fn hamiltonicity_hitting_times(proc: &EdgeProcess, seed: u64) -> Result<HittingTimes> {
    let n = proc.n();
    if n < 3 {
        return Err(Error::InvalidInput(format!("Hamiltonicity needs n >= 3, got {n}")));
    }
    let tau2 = hitting_time(proc, MonotoneProperty::MinDegree(2))?;
    let tau_c = hitting_time(proc, MonotoneProperty::Connected)?;
    let total = proc.len();
    let ham_at = |m: usize| -> Result<bool> {
        let g = proc.snapshot(m)?;
        Ok(if n <= EXACT_HAMILTON_CAP {
            exact_hamiltonian(&g)?.is_hamiltonian()
        } else {
            rotation_extension_search(&g, None, seed).is_hamiltonian()
        })
    };
    let certified = ham_at(tau2)?;
    let mut upper = tau2;
    if !certified {
        if n <= EXACT_HAMILTON_CAP {
            upper = tau2 + 1;
            while !ham_at(upper)? {
                upper += 1;
            }
        } else {
            let mut step = n;
            loop {
                upper = (tau2 + step).min(total);
                if upper == total || ham_at(upper)? {
                    break;
                }
                step *= 2;
            }
        }
    }
    Ok(HittingTimes { tau_min_degree_2: tau2, tau_connectivity: tau_c, tau_hamiltonian_upper: upper, certified_equal: certified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::random_process;

    #[test]
    fn two_vertices() {
        let p = random_process(2, 1).unwrap();
        assert_eq!(hitting_time(&p, MonotoneProperty::MinDegree(1)).unwrap(), 1);
        assert_eq!(hitting_time(&p, MonotoneProperty::Connected).unwrap(), 1);
        assert!(matches!(hitting_time(&p, MonotoneProperty::MinDegree(2)), Err(Error::NoHittingTime)));
        assert!(hamiltonicity_hitting_times(&p, 0).is_err());
    }

    #[test]
    fn scan_matches_bisection() {
        for seed in 0..40 {
            let p = random_process(9, seed).unwrap();
            for prop in [MonotoneProperty::MinDegree(1), MonotoneProperty::MinDegree(2), MonotoneProperty::MinDegree(3), MonotoneProperty::Connected] {
                assert_eq!(hitting_time(&p, prop).unwrap(), hitting_time_bisect(&p, prop).unwrap(), "{seed} {prop:?}");
            }
            let l = hitting_time(&p, MonotoneProperty::LongPath(8)).unwrap();
            assert!(l >= hitting_time(&p, MonotoneProperty::Connected).unwrap());
        }
    }

    #[test]
    fn small_processes_exact() {
        for seed in 0..20 {
            let p = random_process(8, seed).unwrap();
            let h = hamiltonicity_hitting_times(&p, seed).unwrap();
            assert!(h.tau_hamiltonian_upper >= h.tau_min_degree_2);
            assert_eq!(h.certified_equal, h.tau_hamiltonian_upper == h.tau_min_degree_2);
            let before = p.snapshot(h.tau_hamiltonian_upper - 1).unwrap();
            assert!(!exact_hamiltonian(&before).unwrap().is_hamiltonian());
        }
    }
}
