use std::collections::{HashMap, VecDeque};

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use super::sets::{bfs_order, sorted, starts, Growing};
use super::small_vertices;
use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::rng::{derive_seed, rng_from_seed, LabRng};

/// Graphs up to this order get exact P4/P5 checks.
pub const EXACT_AUDIT_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub ln_n: f64,
    /// `10 ln n`
    pub max_degree: f64,
    pub min_degree: usize,
    /// `n^0.3`
    pub small_limit: f64,
    pub small_distance: usize,
    /// `floor(n / ln^{1/2} n)`, the largest `|U|` in P4 and P5.
    pub set_limit: usize,
    /// `ln^{3/4} n`
    pub density: f64,
    /// `ln^{1/4} n`, the bound on `|W| / |U|` in P5.
    pub ratio: f64,
    /// `d0 / 2`
    pub p5_per_vertex: f64,
    /// `ceil(n / ln^{1/2} n)`, the set size in P6 and P7.
    pub pair_size: usize,
    /// `0.5 n`
    pub p6_edges: f64,
}

impl Thresholds {
    pub fn new(n: usize, d0: usize) -> Self {
        let ln_n = if n > 1 { (n as f64).ln() } else { 0.0 };
        let scaled = if ln_n > 0.0 { n as f64 / ln_n.sqrt() } else { n as f64 };
        Thresholds {
            ln_n,
            max_degree: 10.0 * ln_n,
            min_degree: 2,
            small_limit: (n as f64).powf(0.3),
            small_distance: 4,
            set_limit: (scaled.floor() as usize).min(n),
            density: ln_n.powf(0.75),
            ratio: ln_n.powf(0.25),
            p5_per_vertex: d0 as f64 / 2.0,
            pair_size: (scaled.ceil() as usize).min(n),
            p6_edges: 0.5 * n as f64,
        }
    }

    fn w_limit(&self, u: usize, n: usize) -> usize {
        ((u as f64 * self.ratio).floor() as usize).min(n - u)
    }
}

const FORMULAS: [&str; 8] = [
    "ln n is the natural logarithm; set sizes bounded by x use floor(x), sizes equal to x use ceil(x)",
    "P1: max degree <= 10 ln n and min degree >= 2",
    "P2: |SMALL| <= n^0.3, SMALL = {v : d(v) < d0}",
    "P3: no two distinct SMALL vertices within distance 4, no SMALL vertex on a cycle of length <= 4",
    "P4: e(U) <= |U| ln^{3/4} n for all |U| <= n / ln^{1/2} n",
    "P5: e(U, W) <= d0 |U| / 2 for disjoint U, W with |U| <= n / ln^{1/2} n, |W| <= |U| ln^{1/4} n",
    "P6: e(U, W) >= 0.5 n for disjoint U, W with |U| = |W| = ceil(n / ln^{1/2} n)",
    "P7: the backbone has an edge between any disjoint U, W with |U| = |W| = ceil(n / ln^{1/2} n)",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    /// Every relevant vertex, path or set was examined.
    Exact,
    /// Proved by a sufficient condition (degeneracy for P4).
    Certified,
    /// Random and greedy sets; a failure is definite, a pass is evidence.
    Sampled,
    /// No sets of the required size fit.
    Vacuous,
    /// Needs a backbone that was not supplied.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Vertex { vertex: usize, degree: usize },
    Set { vertices: Vec<usize>, edges: usize },
    /// A walk between SMALL vertices; a cycle when the ends coincide.
    Path { vertices: Vec<usize> },
    Pair { u: Vec<usize>, w: Vec<usize>, edges: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub name: String,
    pub holds: bool,
    pub mode: CheckMode,
    pub witness: Option<Witness>,
    pub detail: String,
}

impl PropertyCheck {
    fn new(name: &str, mode: CheckMode, witness: Option<Witness>, detail: String) -> Self {
        PropertyCheck { name: name.to_string(), holds: witness.is_none(), mode, witness, detail }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub n: usize,
    pub d0: usize,
    pub small_set: Vec<usize>,
    pub thresholds: Thresholds,
    pub formulas: Vec<String>,
    pub properties: Vec<PropertyCheck>,
}

impl AuditReport {
    pub fn property(&self, name: &str) -> Option<&PropertyCheck> {
        self.properties.iter().find(|p| p.name == name)
    }

    /// False for unknown names and skipped properties.
    pub fn holds(&self, name: &str) -> bool {
        self.property(name).is_some_and(|p| p.holds && p.mode != CheckMode::Skipped)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditConfig {
    /// Uniform random sets per sampled property.
    pub samples: usize,
    /// Start vertices for greedily grown sets and balls.
    pub growth_starts: usize,
    pub seed: u64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig { samples: 200, growth_starts: 32, seed: 0 }
    }
}

/// P1 to P6 with the default configuration; P7 is skipped.
pub fn audit_properties(g: &Graph, d0: usize) -> AuditReport {
    audit_properties_with(g, d0, None, &AuditConfig::default()).expect("no backbone to mismatch")
}

pub fn audit_properties_with(g: &Graph, d0: usize, backbone: Option<&Graph>, cfg: &AuditConfig) -> Result<AuditReport> {
    let n = g.n();
    if backbone.is_some_and(|b| b.n() != n) {
        return invalid("backbone order differs from the graph");
    }
    let th = Thresholds::new(n, d0);
    let small = small_vertices(g, d0);
    let rng = |i| rng_from_seed(derive_seed(cfg.seed, i));
    let properties = vec![
        p1(g, &th),
        p2(g, &small, &th),
        p3(g, &small),
        p4(g, &th, cfg, &mut rng(4)),
        p5(g, &th, cfg, &mut rng(5)),
        pairs(g, "P6", th.p6_edges, &th, cfg, &mut rng(6)),
        match backbone {
            Some(b) => pairs(b, "P7", 1.0, &th, cfg, &mut rng(7)),
            None => PropertyCheck::new("P7", CheckMode::Skipped, None, "no backbone given".into()),
        },
    ];
    Ok(AuditReport {
        n,
        d0,
        small_set: small,
        thresholds: th,
        formulas: FORMULAS.iter().map(|s| s.to_string()).collect(),
        properties,
    })
}

fn p1(g: &Graph, th: &Thresholds) -> PropertyCheck {
    let n = g.n();
    let bad = (0..n)
        .find(|&v| g.degree(v) as f64 > th.max_degree)
        .or_else(|| (0..n).find(|&v| g.degree(v) < th.min_degree));
    let witness = bad.map(|v| Witness::Vertex { vertex: v, degree: g.degree(v) });
    let detail = if n == 0 { "empty graph".into() } else { format!("degrees in [{}, {}]", g.min_degree(), g.max_degree()) };
    PropertyCheck::new("P1", CheckMode::Exact, witness, detail)
}

fn p2(g: &Graph, small: &[usize], th: &Thresholds) -> PropertyCheck {
    let witness = (small.len() as f64 > th.small_limit)
        .then(|| Witness::Set { vertices: small.to_vec(), edges: g.edges_within(small).expect("small vertices are in range") });
    PropertyCheck::new("P2", CheckMode::Exact, witness, format!("|SMALL| = {}", small.len()))
}

fn p3(g: &Graph, small: &[usize]) -> PropertyCheck {
    let witness = short_small_path(g, small).map(|vertices| Witness::Path { vertices });
    PropertyCheck::new("P3", CheckMode::Exact, witness, format!("{} SMALL vertices searched to depth 4", small.len()))
}

/// A cycle of length at most 4 through a vertex of `small`, written with
/// equal ends, or a path of length at most 4 between two of them.
pub(crate) fn short_small_path(g: &Graph, small: &[usize]) -> Option<Vec<usize>> {
    let mut is_small = vec![false; g.n()];
    for &v in small {
        is_small[v] = true;
    }
    for &s in small {
        if let Some(c) = short_cycle_through(g, s) {
            return Some(c);
        }
        let mut parent = HashMap::from([(s, (s, 0usize))]);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let d = parent[&v].1;
            if v != s && is_small[v] {
                let mut path = vec![v];
                let mut x = v;
                while x != s {
                    x = parent[&x].0;
                    path.push(x);
                }
                path.reverse();
                return Some(path);
            }
            if d == 4 {
                continue;
            }
            for &u in g.neighbors(v) {
                parent.entry(u).or_insert_with(|| {
                    queue.push_back(u);
                    (v, d + 1)
                });
            }
        }
    }
    None
}

fn short_cycle_through(g: &Graph, v: usize) -> Option<Vec<usize>> {
    let mut via: HashMap<usize, usize> = HashMap::new();
    for &a in g.neighbors(v) {
        for &c in g.neighbors(a) {
            if c == v {
                continue;
            }
            if g.has_edge(v, c) {
                return Some(vec![v, a, c, v]);
            }
            match via.get(&c) {
                Some(&a2) if a2 != a => return Some(vec![v, a2, c, a, v]),
                Some(_) => {}
                None => {
                    via.insert(c, a);
                }
            }
        }
    }
    None
}

fn mask_members(mask: u32) -> Vec<usize> {
    (0..32).filter(|&v| mask >> v & 1 == 1).collect()
}

fn p4(g: &Graph, th: &Thresholds, cfg: &AuditConfig, rng: &mut LabRng) -> PropertyCheck {
    let n = g.n();
    let too_dense = |size: usize, edges: usize| edges as f64 > size as f64 * th.density;
    if n <= EXACT_AUDIT_CAP {
        let adj = crate::ham::exact::masks(g);
        for mask in 1u32..(1u32 << n) {
            let size = mask.count_ones() as usize;
            if size > th.set_limit {
                continue;
            }
            let twice: u32 = mask_members(mask).iter().map(|&v| (adj[v] & mask).count_ones()).sum();
            if too_dense(size, twice as usize / 2) {
                let w = Witness::Set { vertices: mask_members(mask), edges: twice as usize / 2 };
                return PropertyCheck::new("P4", CheckMode::Exact, Some(w), "dense set found".into());
            }
        }
        return PropertyCheck::new("P4", CheckMode::Exact, None, format!("all sets of size <= {} checked", th.set_limit));
    }
    // Peeling minimum-degree vertices: each suffix is a candidate, and every
    // subgraph H has e(H) <= degeneracy * |H|.
    let (order, degeneracy) = degeneracy_order(g);
    let mut alive = vec![true; n];
    let mut edges = g.edge_count();
    for (i, &v) in order.iter().enumerate() {
        let size = n - i;
        if size <= th.set_limit && too_dense(size, edges) {
            let w = Witness::Set { vertices: sorted(&order[i..]), edges };
            return PropertyCheck::new("P4", CheckMode::Sampled, Some(w), "dense core found by peeling".into());
        }
        alive[v] = false;
        edges -= g.neighbors(v).iter().filter(|&&u| alive[u]).count();
    }
    if degeneracy as f64 <= th.density {
        return PropertyCheck::new("P4", CheckMode::Certified, None, format!("degeneracy {degeneracy}"));
    }
    for start in starts(g, cfg.growth_starts, rng) {
        let mut grow = Growing::new(g);
        grow.add(start);
        while grow.members.len() < th.set_limit {
            let Some(v) = grow.densest() else { break };
            grow.add(v);
            if too_dense(grow.members.len(), grow.inner_edges) {
                let w = Witness::Set { vertices: sorted(&grow.members), edges: grow.inner_edges };
                return PropertyCheck::new("P4", CheckMode::Sampled, Some(w), "dense set found by growth".into());
            }
        }
    }
    PropertyCheck::new("P4", CheckMode::Sampled, None, format!("degeneracy {degeneracy}; no dense set found"))
}

/// Smallest-last order and the degeneracy.
fn degeneracy_order(g: &Graph) -> (Vec<usize>, usize) {
    let n = g.n();
    let mut deg: Vec<usize> = g.degrees();
    let maxd = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); maxd + 1];
    for v in 0..n {
        buckets[deg[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    let mut d = 0;
    while order.len() < n {
        d = d.min(maxd);
        let Some(v) = buckets[d].pop() else {
            d += 1;
            continue;
        };
        if removed[v] || deg[v] != d {
            continue;
        }
        removed[v] = true;
        degeneracy = degeneracy.max(d);
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
                buckets[deg[u]].push(u);
            }
        }
        d = d.saturating_sub(1);
    }
    (order, degeneracy)
}

/// Best `W` for a fixed `U`: the vertices outside `U` with the most (or the
/// fewest) neighbours in `U`.
fn extreme_w(cnt: &[u32], in_u: &[bool], size: usize, most: bool) -> (Vec<usize>, usize) {
    let mut outside: Vec<usize> = (0..cnt.len()).filter(|&x| !in_u[x]).collect();
    if most {
        outside.sort_by_key(|&x| (std::cmp::Reverse(cnt[x]), x));
    } else {
        outside.sort_by_key(|&x| (cnt[x], x));
    }
    outside.truncate(size);
    let edges = outside.iter().map(|&x| cnt[x] as usize).sum();
    outside.sort_unstable();
    (outside, edges)
}

fn p5(g: &Graph, th: &Thresholds, cfg: &AuditConfig, rng: &mut LabRng) -> PropertyCheck {
    let n = g.n();
    let limit = |u: usize| u as f64 * th.p5_per_vertex;
    if n <= EXACT_AUDIT_CAP {
        let adj = crate::ham::exact::masks(g);
        let mut cnt = vec![0u32; n];
        let mut in_u = vec![false; n];
        for mask in 1u32..(1u32 << n) {
            let size = mask.count_ones() as usize;
            if size > th.set_limit {
                continue;
            }
            for x in 0..n {
                cnt[x] = (adj[x] & mask).count_ones();
                in_u[x] = mask >> x & 1 == 1;
            }
            let (w, edges) = extreme_w(&cnt, &in_u, th.w_limit(size, n), true);
            if edges as f64 > limit(size) {
                let wit = Witness::Pair { u: mask_members(mask), w, edges };
                return PropertyCheck::new("P5", CheckMode::Exact, Some(wit), "heavy pair found".into());
            }
        }
        return PropertyCheck::new("P5", CheckMode::Exact, None, format!("all sets of size <= {} checked", th.set_limit));
    }
    let mut checked = 0usize;
    let mut test = |grow: &Growing| -> Option<Witness> {
        checked += 1;
        let size = grow.members.len();
        let (w, edges) = extreme_w(&grow.cnt, &grow.in_u, th.w_limit(size, n), true);
        (edges as f64 > limit(size)).then(|| Witness::Pair { u: sorted(&grow.members), w, edges })
    };
    for start in starts(g, cfg.growth_starts, rng) {
        let mut dense = Growing::new(g);
        dense.add(start);
        loop {
            if let Some(wit) = test(&dense) {
                return PropertyCheck::new("P5", CheckMode::Sampled, Some(wit), "heavy pair found by growth".into());
            }
            if dense.members.len() >= th.set_limit {
                break;
            }
            let Some(v) = dense.densest() else { break };
            dense.add(v);
        }
    }
    for _ in 0..cfg.samples {
        if th.set_limit == 0 {
            break;
        }
        let size = rand::Rng::random_range(rng, 1..=th.set_limit);
        let mut grow = Growing::new(g);
        for v in sample(rng, n, size) {
            grow.add(v);
        }
        if let Some(wit) = test(&grow) {
            return PropertyCheck::new("P5", CheckMode::Sampled, Some(wit), "heavy pair found by sampling".into());
        }
    }
    PropertyCheck::new("P5", CheckMode::Sampled, None, format!("{checked} sets U checked with their heaviest W"))
}

/// P6 and P7: for sampled `U` of the given size, `W` is the set of the same
/// size with the fewest edges to `U`.
fn pairs(g: &Graph, name: &str, min_edges: f64, th: &Thresholds, cfg: &AuditConfig, rng: &mut LabRng) -> PropertyCheck {
    let n = g.n();
    let s = th.pair_size;
    if s == 0 || 2 * s > n {
        return PropertyCheck::new(name, CheckMode::Vacuous, None, format!("two disjoint sets of size {s} do not fit"));
    }
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for start in starts(g, cfg.growth_starts, rng) {
        candidates.push(bfs_order(g, start, s));
        let mut thin = Growing::new(g);
        thin.add(start);
        while thin.members.len() < s {
            match thin.thinnest() {
                Some(v) => thin.add(v),
                None => break,
            }
        }
        candidates.push(thin.members);
    }
    for _ in 0..cfg.samples {
        candidates.push(sample(rng, n, s).into_vec());
    }
    let mut checked = 0;
    for mut u in candidates {
        // Pad sets cut short by a small component.
        if u.len() < s {
            let mut inside = vec![false; n];
            for &v in &u {
                inside[v] = true;
            }
            u.extend((0..n).filter(|&v| !inside[v]).take(s - u.len()));
        }
        let mut grow = Growing::new(g);
        for &v in &u {
            grow.add(v);
        }
        checked += 1;
        let (w, edges) = extreme_w(&grow.cnt, &grow.in_u, s, false);
        if (edges as f64) < min_edges {
            let wit = Witness::Pair { u: sorted(&u), w, edges };
            return PropertyCheck::new(name, CheckMode::Sampled, Some(wit), "sparse pair found".into());
        }
    }
    PropertyCheck::new(name, CheckMode::Sampled, None, format!("{checked} sets U checked with their sparsest W"))
}
