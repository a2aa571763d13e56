//! Vertex expansion checks, `SMALL(G)`, the property audit, and the sparse
//! backbone.
//!
//! A graph is a `(k, alpha)`-expander when every vertex set `U` with
//! `|U| <= k` has `|N(U)| >= alpha |U|`, `N(U)` being the external
//! neighbourhood. Deciding this is exponential in general, so every verdict
//! carries its [`Certainty`].

mod audit;
mod sets;

pub use audit::{
    audit_properties, audit_properties_with, AuditConfig, AuditReport, CheckMode, PropertyCheck, Thresholds, Witness,
    EXACT_AUDIT_CAP,
};

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::rng::rng_from_seed;

pub const EXACT_EXPANDER_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpanderQuery {
    pub k: usize,
    pub alpha: f64,
}

impl ExpanderQuery {
    pub fn new(k: usize, alpha: f64) -> Result<Self> {
        if k == 0 || alpha.is_nan() || alpha <= 0.0 {
            return invalid(format!("expander query needs k >= 1 and alpha > 0, got ({k}, {alpha})"));
        }
        Ok(ExpanderQuery { k, alpha })
    }

    fn violated_by(&self, size: usize, boundary: usize) -> bool {
        (boundary as f64) < self.alpha * size as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpanderMode {
    /// Every set of size at most `k`; `n <= 20`.
    Exact,
    /// Random sets, balls and greedily grown sets.
    Sampled { trials: usize, seed: u64 },
    /// Exact checks for sets of size 1 and 2, connectivity, spacing of
    /// low-degree vertices, and adversarial greedy growth from many starts.
    Structural { d0: usize, trials: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certainty {
    /// All sets were checked.
    Proof,
    /// A violating set was found; the answer "no" is definite.
    Refuted,
    /// No violation found among the sets examined.
    Evidence,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpanderVerdict {
    pub expands: bool,
    pub certainty: Certainty,
    /// A set with `|N(U)| < alpha |U|` when refuted.
    pub witness: Option<Vec<usize>>,
    pub sets_checked: u64,
    pub notes: Vec<String>,
}

impl ExpanderVerdict {
    fn refuted(witness: Vec<usize>, sets_checked: u64, note: impl Into<String>) -> Self {
        ExpanderVerdict {
            expands: false,
            certainty: Certainty::Refuted,
            witness: Some(witness),
            sets_checked,
            notes: vec![note.into()],
        }
    }
}

/// Vertices of degree below `d0`.
pub fn small_vertices(g: &Graph, d0: usize) -> Vec<usize> {
    (0..g.n()).filter(|&v| g.degree(v) < d0).collect()
}

pub fn is_expander(g: &Graph, q: ExpanderQuery, mode: ExpanderMode) -> Result<ExpanderVerdict> {
    match mode {
        ExpanderMode::Exact => exact(g, q),
        ExpanderMode::Sampled { trials, seed } => Ok(sampled(g, q, trials, seed)),
        ExpanderMode::Structural { d0, trials, seed } => Ok(structural(g, q, d0, trials, seed)),
    }
}

fn exact(g: &Graph, q: ExpanderQuery) -> Result<ExpanderVerdict> {
    let n = g.n();
    if n > EXACT_EXPANDER_CAP {
        return Err(Error::Capacity { what: "exact expander check", cap: EXACT_EXPANDER_CAP, n });
    }
    let adj = crate::ham::exact::masks(g);
    let mut checked = 0u64;
    for size in 1..=q.k.min(n) {
        let mut set: u32 = (1u32 << size) - 1;
        let limit = 1u32 << n;
        while set < limit {
            checked += 1;
            let mut nb = 0u32;
            let mut rest = set;
            while rest != 0 {
                nb |= adj[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            let boundary = (nb & !set).count_ones() as usize;
            if q.violated_by(size, boundary) {
                let members = (0..n).filter(|&v| set >> v & 1 == 1).collect();
                return Ok(ExpanderVerdict::refuted(members, checked, format!("|N(U)| = {boundary} for |U| = {size}")));
            }
            // Gosper's hack: next set of the same size.
            let c = set & set.wrapping_neg();
            let r = set + c;
            set = (((r ^ set) >> 2) / c) | r;
        }
    }
    Ok(ExpanderVerdict {
        expands: true,
        certainty: Certainty::Proof,
        witness: None,
        sets_checked: checked,
        notes: vec![format!("all sets of size <= {} checked", q.k.min(n))],
    })
}

fn sampled(g: &Graph, q: ExpanderQuery, trials: usize, seed: u64) -> ExpanderVerdict {
    let mut rng = rng_from_seed(seed);
    let mut checked = 0u64;
    if let Some(w) = sets::search_violation(g, q, trials, &mut rng, &mut checked) {
        return ExpanderVerdict::refuted(w, checked, "sampled set violates expansion");
    }
    ExpanderVerdict {
        expands: true,
        certainty: Certainty::Evidence,
        witness: None,
        sets_checked: checked,
        notes: vec![format!("{checked} sampled sets satisfied expansion")],
    }
}

fn structural(g: &Graph, q: ExpanderQuery, d0: usize, trials: usize, seed: u64) -> ExpanderVerdict {
    let mut notes = Vec::new();
    let mut checked = 0u64;
    if let Some(w) = sets::violation_up_to_two(g, q, &mut checked) {
        return ExpanderVerdict::refuted(w, checked, "set of size <= 2 violates expansion");
    }
    notes.push("all sets of size <= 2 checked exactly".to_string());
    let components = g.connected_components();
    if components.len() > 1 {
        // A smallest component has no outside neighbours.
        let smallest = components.iter().min_by_key(|c| c.len()).expect("non-empty").clone();
        if smallest.len() <= q.k {
            return ExpanderVerdict::refuted(smallest, checked, "disconnected");
        }
    }
    notes.push(format!("connected: {}", components.len() == 1));
    let small = small_vertices(g, d0);
    match audit::short_small_path(g, &small) {
        Some(p) => notes.push(format!("low-degree vertices are close: {p:?}")),
        None => notes.push(format!("{} vertices of degree < {d0}, pairwise more than 4 apart", small.len())),
    }
    let mut rng = rng_from_seed(seed);
    if let Some(w) = sets::search_violation(g, q, trials, &mut rng, &mut checked) {
        return ExpanderVerdict::refuted(w, checked, "adversarial set violates expansion");
    }
    notes.push(format!("{checked} sets checked in total"));
    ExpanderVerdict {
        expands: true,
        certainty: Certainty::Evidence,
        witness: None,
        sets_checked: checked,
        notes,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BackboneConfig {
    pub d0: usize,
    pub seed: u64,
}

/// `d0 = floor(delta0 ln n)`.
pub fn d0_from_delta(delta0: f64, n: usize) -> usize {
    (delta0 * (n.max(1) as f64).ln()).floor() as usize
}

/// Keeps every edge at vertices of degree below `d0` and a uniformly random
/// `d0`-subset of the edges at every other vertex. Vertices are processed in
/// index order with one generator seeded by `cfg.seed`.
pub fn sparse_backbone(g: &Graph, cfg: BackboneConfig) -> Result<Graph> {
    if cfg.d0 == 0 {
        return invalid("backbone needs d0 >= 1");
    }
    let mut rng = rng_from_seed(cfg.seed);
    let mut edges = Vec::new();
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        if nb.len() < cfg.d0 {
            edges.extend(nb.iter().map(|&u| (v.min(u), v.max(u))));
        } else {
            edges.extend(sample(&mut rng, nb.len(), cfg.d0).into_iter().map(|i| (v.min(nb[i]), v.max(nb[i]))));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(g.n(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::{cycle_graph, path_graph, petersen};

    #[test]
    fn complete_graph_expands() {
        for n in [6, 9, 12] {
            let v = is_expander(&Graph::complete(n), ExpanderQuery::new(n / 3, 2.0).unwrap(), ExpanderMode::Exact).unwrap();
            assert!(v.expands);
            assert_eq!(v.certainty, Certainty::Proof);
        }
    }

    #[test]
    fn path_graph_fails() {
        let v = is_expander(&path_graph(8), ExpanderQuery::new(2, 2.0).unwrap(), ExpanderMode::Exact).unwrap();
        assert!(!v.expands);
        let w = v.witness.unwrap();
        assert!(path_graph(8).external_neighborhood(&w).unwrap().len() < 2 * w.len());
    }

    #[test]
    fn query_validation() {
        assert!(ExpanderQuery::new(0, 2.0).is_err());
        assert!(ExpanderQuery::new(1, 0.0).is_err());
        assert!(is_expander(&Graph::empty(21), ExpanderQuery::new(1, 1.0).unwrap(), ExpanderMode::Exact).is_err());
    }

    #[test]
    fn structural_refutes_cycles() {
        let q = ExpanderQuery::new(25, 2.0).unwrap();
        let v = is_expander(&cycle_graph(100), q, ExpanderMode::Structural { d0: 3, trials: 10, seed: 1 }).unwrap();
        assert_eq!(v.certainty, Certainty::Refuted);
        let v = is_expander(&petersen(), ExpanderQuery::new(2, 2.0).unwrap(), ExpanderMode::Sampled { trials: 50, seed: 1 }).unwrap();
        assert!(v.expands);
    }

    #[test]
    fn small_sets() {
        assert_eq!(small_vertices(&petersen(), 4).len(), 10);
        assert!(small_vertices(&Graph::complete(7), 6).is_empty());
    }

    #[test]
    fn backbone_basics() {
        let g = cycle_graph(12);
        assert_eq!(sparse_backbone(&g, BackboneConfig { d0: 2, seed: 0 }).unwrap(), g);
        let k = Graph::complete(10);
        let b = sparse_backbone(&k, BackboneConfig { d0: 3, seed: 4 }).unwrap();
        assert!(b.edge_count() <= 30);
        assert!(b.min_degree() >= 3);
        assert!(b.is_subgraph_of(&k));
        assert!(sparse_backbone(&k, BackboneConfig { d0: 0, seed: 4 }).is_err());
    }
}
