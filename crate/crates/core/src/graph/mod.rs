//! Simple graphs on the vertex set `0..n` and the set-level primitives used
//! throughout the crate: external neighbourhoods, crossing and spanned edge
//! counts, and connected components.
//!
//! Adjacency lists are kept sorted, so every traversal visits neighbours in a
//! deterministic order. Vertex sets are passed as slices; duplicates inside
//! a slice are treated as a single member.

mod digraph;
pub mod io;
pub mod named;
mod path;

pub use digraph::DiGraph;
pub use path::{Cycle, Path};

use crate::error::{Error, Result};

/// Read-only adjacency access shared by [`Graph`] and [`DiGraph`].
///
/// For undirected graphs `successors` are all neighbours; for digraphs they
/// are the out-neighbours. Slices are sorted ascending.
pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    fn successors(&self, v: usize) -> &[usize];
    fn has_edge(&self, u: usize, v: usize) -> bool;
}

/// An undirected simple graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u).collect())
            .collect();
        Graph {
            n,
            adj,
            edge_count: n * n.saturating_sub(1) / 2,
        }
    }

    /// Builds a graph from an edge list, rejecting loops, parallel edges and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut count = 0usize;
        for (u, v) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            count += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph {
            n,
            adj,
            edge_count: count,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of vertex pairs, `n choose 2`.
    pub fn pair_count(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Minimum degree; `0` for the graph without vertices.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&v| v < u);
            list[start..].iter().map(move |&v| (u, v))
        })
    }

    /// Inserts the edge `{u, v}` in place.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        check_vertex(u, self.n)?;
        check_vertex(v, self.n)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::DuplicateEdge(u.min(v), u.max(v))),
            Err(i) => {
                self.adj[u].insert(i, v);
                let j = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(j, u);
                self.edge_count += 1;
                Ok(())
            }
        }
    }

    /// A copy of this graph with one more edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.add_edge(u, v)?;
        Ok(g)
    }

    /// True when every edge of `self` is an edge of `other` (same vertex count).
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges().all(|(u, v)| other.has_edge(u, v))
    }

    /// `N(U)`: vertices outside `U` with at least one neighbour in `U`.
    /// Returned sorted.
    pub fn external_neighborhood(&self, set: &[usize]) -> Result<Vec<usize>> {
        let inside = self.membership(set)?;
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for &u in set {
            for &w in &self.adj[u] {
                if !inside[w] && !seen[w] {
                    seen[w] = true;
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// `e(U, W)` for disjoint `U` and `W`.
    pub fn edges_between(&self, left: &[usize], right: &[usize]) -> Result<usize> {
        let in_left = self.membership(left)?;
        let in_right = self.membership(right)?;
        if let Some(&v) = right.iter().find(|&&v| in_left[v]) {
            return Err(Error::InvalidInput(format!(
                "vertex sets must be disjoint, {v} is in both"
            )));
        }
        let mut count = 0;
        for (u, _) in in_left.iter().enumerate().filter(|(_, &m)| m) {
            count += self.adj[u].iter().filter(|&&w| in_right[w]).count();
        }
        Ok(count)
    }

    /// `e(U)`: edges with both endpoints in `U`.
    pub fn edges_within(&self, set: &[usize]) -> Result<usize> {
        let inside = self.membership(set)?;
        let mut twice = 0;
        for (u, _) in inside.iter().enumerate().filter(|(_, &m)| m) {
            twice += self.adj[u].iter().filter(|&&w| inside[w]).count();
        }
        Ok(twice / 2)
    }

    /// Connected components, each sorted, listed by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            stack.push(s);
            let mut members = Vec::new();
            while let Some(u) = stack.pop() {
                members.push(u);
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// Size of the largest connected component.
    pub fn largest_component(&self) -> usize {
        self.connected_components()
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn membership(&self, set: &[usize]) -> Result<Vec<bool>> {
        let mut mark = vec![false; self.n];
        for &v in set {
            check_vertex(v, self.n)?;
            mark[v] = true;
        }
        Ok(mark)
    }
}

impl Adjacency for Graph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn successors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        Graph::has_edge(self, u, v)
    }
}

pub(crate) fn check_vertex(v: usize, n: usize) -> Result<()> {
    if v >= n {
        Err(Error::VertexOutOfRange { vertex: v, n })
    } else {
        Ok(())
    }
}
