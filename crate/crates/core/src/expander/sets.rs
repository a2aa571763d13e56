//! Candidate vertex sets for refutation searches.

use std::collections::VecDeque;

use rand::seq::index::sample;
use rand::Rng;

use super::ExpanderQuery;
use crate::graph::Graph;
use crate::rng::LabRng;

/// A vertex set grown one vertex at a time, tracking `N(U)` and `e(U)`.
pub(crate) struct Growing<'a> {
    g: &'a Graph,
    pub in_u: Vec<bool>,
    /// Neighbours in `U` per vertex.
    pub cnt: Vec<u32>,
    pub members: Vec<usize>,
    pub boundary: usize,
    pub inner_edges: usize,
    frontier: Vec<usize>,
}

impl<'a> Growing<'a> {
    pub fn new(g: &'a Graph) -> Self {
        Growing {
            g,
            in_u: vec![false; g.n()],
            cnt: vec![0; g.n()],
            members: Vec::new(),
            boundary: 0,
            inner_edges: 0,
            frontier: Vec::new(),
        }
    }

    pub fn add(&mut self, v: usize) {
        debug_assert!(!self.in_u[v]);
        if self.cnt[v] > 0 {
            self.boundary -= 1;
        }
        self.inner_edges += self.cnt[v] as usize;
        self.in_u[v] = true;
        self.members.push(v);
        for &x in self.g.neighbors(v) {
            self.cnt[x] += 1;
            if self.cnt[x] == 1 && !self.in_u[x] {
                self.boundary += 1;
                self.frontier.push(x);
            }
        }
    }

    /// Current `N(U)`, compacting the frontier list.
    pub fn boundary_vertices(&mut self) -> &[usize] {
        let (in_u, cnt) = (&self.in_u, &self.cnt);
        self.frontier.retain(|&x| !in_u[x] && cnt[x] > 0);
        &self.frontier
    }

    /// Boundary vertex adding the fewest new boundary vertices.
    pub fn thinnest(&mut self) -> Option<usize> {
        let g = self.g;
        self.boundary_vertices();
        let (in_u, cnt) = (&self.in_u, &self.cnt);
        self.frontier
            .iter()
            .copied()
            .min_by_key(|&v| (g.neighbors(v).iter().filter(|&&x| !in_u[x] && cnt[x] == 0).count(), v))
    }

    /// Boundary vertex with the most neighbours in `U`.
    pub fn densest(&mut self) -> Option<usize> {
        self.boundary_vertices();
        let cnt = &self.cnt;
        self.frontier.iter().copied().max_by_key(|&v| (cnt[v], std::cmp::Reverse(v)))
    }
}

/// Vertices in breadth-first order from `start`, at most `limit` of them.
pub(crate) fn bfs_order(g: &Graph, start: usize, limit: usize) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        if order.len() == limit {
            break;
        }
        order.push(v);
        for &u in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    order
}

/// Start vertices: the lowest-degree ones first, then random ones.
pub(crate) fn starts(g: &Graph, count: usize, rng: &mut LabRng) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (g.degree(v), v));
    let half = count.div_ceil(2).min(n);
    let mut out = by_degree[..half].to_vec();
    out.extend((half..count).map(|_| rng.random_range(0..n)));
    out
}

/// All sets of size 1 and 2. Pairs more than two apart have disjoint
/// closed neighbourhoods, so they pass whenever all singletons pass.
pub(crate) fn violation_up_to_two(g: &Graph, q: ExpanderQuery, checked: &mut u64) -> Option<Vec<usize>> {
    let n = g.n();
    for v in 0..n {
        *checked += 1;
        if q.violated_by(1, g.degree(v)) {
            return Some(vec![v]);
        }
    }
    if q.k < 2 {
        return None;
    }
    let mut mark = vec![usize::MAX; n];
    for u in 0..n {
        let near = bfs_order_depth(g, u, 2);
        for &v in near.iter().filter(|&&v| v > u) {
            *checked += 1;
            let mut boundary = 0;
            for &x in g.neighbors(u).iter().chain(g.neighbors(v)) {
                if x != u && x != v && mark[x] != v {
                    mark[x] = v;
                    boundary += 1;
                }
            }
            for &x in g.neighbors(u).iter().chain(g.neighbors(v)) {
                mark[x] = usize::MAX;
            }
            if q.violated_by(2, boundary) {
                return Some(vec![u, v]);
            }
        }
    }
    None
}

fn bfs_order_depth(g: &Graph, start: usize, depth: usize) -> Vec<usize> {
    let mut dist = std::collections::HashMap::from([(start, 0usize)]);
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(v) = queue.pop_front() {
        out.push(v);
        let d = dist[&v];
        if d == depth {
            continue;
        }
        for &u in g.neighbors(v) {
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(u) {
                e.insert(d + 1);
                queue.push_back(u);
            }
        }
    }
    out
}

/// Each trial grows a set greedily (keeping `N(U)` small) and a BFS ball
/// from one start vertex, then tests a uniform random set; every prefix of
/// size at most `k` is checked.
pub(crate) fn search_violation(
    g: &Graph,
    q: ExpanderQuery,
    trials: usize,
    rng: &mut LabRng,
    checked: &mut u64,
) -> Option<Vec<usize>> {
    let n = g.n();
    let k = q.k.min(n);
    if k == 0 {
        return None;
    }
    for start in starts(g, trials, rng) {
        let mut grow = Growing::new(g);
        grow.add(start);
        loop {
            *checked += 1;
            if q.violated_by(grow.members.len(), grow.boundary) {
                return Some(sorted(&grow.members));
            }
            if grow.members.len() == k {
                break;
            }
            match grow.thinnest() {
                Some(v) => grow.add(v),
                None => break,
            }
        }
        let mut ball = Growing::new(g);
        for v in bfs_order(g, start, k) {
            ball.add(v);
            *checked += 1;
            if q.violated_by(ball.members.len(), ball.boundary) {
                return Some(sorted(&ball.members));
            }
        }
        let size = rng.random_range(1..=k);
        let mut random = Growing::new(g);
        for v in sample(rng, n, size) {
            random.add(v);
        }
        *checked += 1;
        if q.violated_by(size, random.boundary) {
            return Some(sorted(&random.members));
        }
    }
    None
}

pub(crate) fn sorted(vs: &[usize]) -> Vec<usize> {
    let mut out = vs.to_vec();
    out.sort_unstable();
    out
}
