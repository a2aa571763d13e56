use super::engine::{Machine, Probe};
use super::DfsTrace;
use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::models::{colex_index, BitSource};

/// Queries answered by a bit source: the next one among the `r` remaining
/// candidates says which of them is the first neighbour.
struct StreamProbe<'a, B: BitSource> {
    bits: &'a mut B,
    /// Colex-indexed flags of pairs already queried, when tracked.
    queried: Option<Vec<u64>>,
}

impl<B: BitSource> StreamProbe<'_, B> {
    fn mark(&mut self, m: &Machine, v: usize, base: u64, count: u64) {
        if let Some(q) = self.queried.as_mut() {
            for k in 1..=count {
                let u = m.order[m.t_ranks.select(base + k)];
                let idx = colex_index(u, v);
                q[idx / 64] |= 1 << (idx % 64);
            }
        }
    }
}

impl<B: BitSource> Probe for StreamProbe<'_, B> {
    fn probe(&mut self, m: &Machine, v: usize) -> Result<Option<usize>> {
        let base = m.t_ranks.prefix(m.cursor[v]);
        let available = m.t_ranks.total() - base;
        if available == 0 {
            return Ok(None);
        }
        match self.bits.next_one_within(available)? {
            Some(j) => {
                self.mark(m, v, base, j + 1);
                Ok(Some(m.order[m.t_ranks.select(base + j + 1)]))
            }
            None => {
                self.mark(m, v, base, available);
                Ok(None)
            }
        }
    }
}

fn check_fresh<B: BitSource>(bits: &B) -> Result<()> {
    if bits.position() != 0 {
        return invalid(format!("stream already consumed {} bits", bits.position()));
    }
    Ok(())
}

/// Builds `G(n, p)` on the fly: the DFS queries pairs and each query reads
/// one bit (1 = edge). Once `U` and `T` are empty, every pair not yet
/// queried reads one more bit, in lexicographic pair order, so exactly
/// `n(n-1)/2` bits are consumed. Memory and time are `O(n^2)`; use
/// [`explore_online`] when only the exploration is needed.
pub fn online_dfs<B: BitSource>(n: usize, bits: &mut B) -> Result<(Graph, DfsTrace)> {
    check_fresh(bits)?;
    let pairs = n * n.saturating_sub(1) / 2;
    let mut probe = StreamProbe {
        bits,
        queried: Some(vec![0u64; pairs.div_ceil(64)]),
    };
    let trace = Machine::new(n, (0..n).collect())?.run(&mut probe)?;
    let queried = probe.queried.take().expect("tracking enabled");
    let mut edges = trace.tree_edges();
    for u in 0..n {
        for v in u + 1..n {
            let idx = colex_index(u, v);
            if queried[idx / 64] >> (idx % 64) & 1 == 0 && probe.bits.next_bit()? {
                edges.push((u, v));
            }
        }
    }
    Ok((Graph::from_edges(n, edges)?, trace))
}

/// The exploration phase of [`online_dfs`] alone: same trace for the same
/// stream, `O(n log n)` work plus one geometric draw per positive answer.
pub fn explore_online<B: BitSource>(n: usize, bits: &mut B) -> Result<DfsTrace> {
    check_fresh(bits)?;
    let mut probe = StreamProbe { bits, queried: None };
    Machine::new(n, (0..n).collect())?.run(&mut probe)
}
