use super::{DfsEvent, DfsTrace, Epoch, VertexSet};
use crate::error::{invalid, Result};
use crate::graph::Path;

/// Binary indexed tree over `0..n` holding 0/1 flags.
#[derive(Clone, Debug)]
pub(crate) struct Fenwick {
    tree: Vec<u32>,
}

impl Fenwick {
    pub fn full(n: usize) -> Self {
        let mut tree = vec![0u32; n + 1];
        for i in 1..=n {
            tree[i] += 1;
            let j = i + (i & i.wrapping_neg());
            if j <= n {
                tree[j] += tree[i];
            }
        }
        Fenwick { tree }
    }

    pub fn remove(&mut self, index: usize) {
        let mut i = index + 1;
        while i < self.tree.len() {
            self.tree[i] -= 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Number of set flags in `0..end`.
    pub fn prefix(&self, end: usize) -> u64 {
        let mut i = end;
        let mut sum = 0u64;
        while i > 0 {
            sum += u64::from(self.tree[i]);
            i &= i - 1;
        }
        sum
    }

    pub fn total(&self) -> u64 {
        self.prefix(self.tree.len() - 1)
    }

    /// Index of the `k`-th set flag, `k >= 1`.
    pub fn select(&self, mut k: u64) -> usize {
        let n = self.tree.len() - 1;
        let mut pos = 0usize;
        let mut step = if n == 0 { 0 } else { 1usize << (usize::BITS - 1 - n.leading_zeros()) };
        while step > 0 {
            let next = pos + step;
            if next <= n && u64::from(self.tree[next]) < k {
                pos = next;
                k -= u64::from(self.tree[next]);
            }
            step >>= 1;
        }
        pos
    }
}

/// Answers "which T-vertex does the stack top `v` find next?"
pub(crate) trait Probe {
    /// The pi-smallest member of T with rank at least `m.cursor[v]` that is
    /// a successor of `v`, or `None` if there is none.
    fn probe(&mut self, m: &Machine, v: usize) -> Result<Option<usize>>;
}

/// S/U/T bookkeeping shared by the offline and online DFS.
pub(crate) struct Machine {
    pub n: usize,
    pub order: Vec<usize>,
    pub rank: Vec<usize>,
    pub set: Vec<VertexSet>,
    pub stack: Vec<usize>,
    /// Per vertex: rank from which its next query starts.
    pub cursor: Vec<usize>,
    /// T membership, indexed by rank.
    pub t_ranks: Fenwick,
    events: Vec<DfsEvent>,
    epochs: Vec<Epoch>,
    epoch_start: usize,
    epoch_members: Vec<usize>,
    queries: u64,
    positives: u64,
    best_len: usize,
    best_step: usize,
}

pub(crate) fn check_order(n: usize, order: &[usize]) -> Result<Vec<usize>> {
    if order.len() != n {
        return invalid(format!("order has {} entries for {n} vertices", order.len()));
    }
    let mut rank = vec![usize::MAX; n];
    for (r, &v) in order.iter().enumerate() {
        if v >= n || rank[v] != usize::MAX {
            return invalid(format!("order is not a permutation of 0..{n}"));
        }
        rank[v] = r;
    }
    Ok(rank)
}

impl Machine {
    pub fn new(n: usize, order: Vec<usize>) -> Result<Self> {
        let rank = check_order(n, &order)?;
        Ok(Machine {
            n,
            order,
            rank,
            set: vec![VertexSet::T; n],
            stack: Vec::new(),
            cursor: vec![0; n],
            t_ranks: Fenwick::full(n),
            events: Vec::with_capacity(2 * n),
            epochs: Vec::new(),
            epoch_start: 0,
            epoch_members: Vec::new(),
            queries: 0,
            positives: 0,
            best_len: 0,
            best_step: 0,
        })
    }

    fn record(&mut self, vertex: usize, from: VertexSet, to: VertexSet) {
        self.set[vertex] = to;
        self.events.push(DfsEvent {
            vertex,
            from,
            to,
            queries: self.queries,
            positives: self.positives,
        });
    }

    fn push(&mut self, u: usize) {
        self.t_ranks.remove(self.rank[u]);
        self.stack.push(u);
        self.epoch_members.push(u);
        self.record(u, VertexSet::T, VertexSet::U);
        if self.stack.len() > self.best_len {
            self.best_len = self.stack.len();
            self.best_step = self.events.len();
        }
    }

    pub fn run(mut self, probe: &mut impl Probe) -> Result<DfsTrace> {
        loop {
            let Some(&v) = self.stack.last() else {
                if self.t_ranks.total() == 0 {
                    break;
                }
                let first = self.order[self.t_ranks.select(1)];
                self.push(first);
                self.epoch_start = self.events.len();
                continue;
            };
            let found = probe.probe(&self, v)?;
            let lo = self.cursor[v];
            let hi = found.map_or(self.n, |u| self.rank[u] + 1);
            self.queries += self.t_ranks.prefix(hi) - self.t_ranks.prefix(lo);
            self.cursor[v] = hi;
            match found {
                Some(u) => {
                    self.positives += 1;
                    self.push(u);
                }
                None => {
                    self.stack.pop();
                    self.record(v, VertexSet::U, VertexSet::S);
                    if self.stack.is_empty() {
                        let mut vertices = std::mem::take(&mut self.epoch_members);
                        vertices.sort_unstable();
                        self.epochs.push(Epoch {
                            start_step: self.epoch_start,
                            end_step: self.events.len(),
                            vertices,
                        });
                    }
                }
            }
        }
        let max_u_path = Path::new_unchecked(stack_after(&self.events, self.best_step));
        Ok(DfsTrace {
            n: self.n,
            order: self.order,
            events: self.events,
            epochs: self.epochs,
            max_u_path,
            max_u_step: self.best_step,
            query_count: self.queries,
        })
    }
}

/// Stack contents after the first `step` events.
pub(crate) fn stack_after(events: &[DfsEvent], step: usize) -> Vec<usize> {
    let mut stack = Vec::new();
    for e in &events[..step] {
        match e.to {
            VertexSet::U => stack.push(e.vertex),
            _ => {
                stack.pop();
            }
        }
    }
    stack
}
