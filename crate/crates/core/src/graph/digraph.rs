use super::{check_vertex, Adjacency};
use crate::error::{Error, Result};

/// A directed graph without loops or parallel arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiGraph {
    n: usize,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    arc_count: usize,
}

impl DiGraph {
    pub fn empty(n: usize) -> Self {
        DiGraph {
            n,
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            arc_count: 0,
        }
    }

    /// Every ordered pair is an arc.
    pub fn complete(n: usize) -> Self {
        let arcs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)));
        Self::from_arcs(n, arcs).expect("complete digraph is simple")
    }

    /// The tournament with arcs `u -> v` for all `u < v`.
    pub fn transitive_tournament(n: usize) -> Self {
        let arcs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_arcs(n, arcs).expect("tournament is simple")
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut count = 0;
        for (u, v) in arcs {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            out_adj[u].push(v);
            in_adj[v].push(u);
            count += 1;
        }
        for (u, list) in out_adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u, w[0]));
            }
        }
        for list in in_adj.iter_mut() {
            list.sort_unstable();
        }
        Ok(DiGraph {
            n,
            out_adj,
            in_adj,
            arc_count: count,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.out_adj[u].binary_search(&v).is_ok()
    }

    /// Arcs in lexicographic order of `(tail, head)`.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }
}

impl Adjacency for DiGraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn successors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v)
    }
}
