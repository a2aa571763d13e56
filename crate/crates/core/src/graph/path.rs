use serde::{Deserialize, Serialize};

use super::Adjacency;
use crate::error::{Error, Result};

/// A simple path, stored as its vertex sequence. Lengths are in edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<usize>);

impl Path {
    /// Validates that the vertices are distinct, in range, and consecutive
    /// ones are joined by an edge (arc, for digraphs) of `g`.
    pub fn new<G: Adjacency>(g: &G, vertices: Vec<usize>) -> Result<Self> {
        check_walk(g, &vertices, false)?;
        Ok(Path(vertices))
    }

    pub(crate) fn new_unchecked(vertices: Vec<usize>) -> Self {
        Path(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.0
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn vertex_count(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn start(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn end(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn is_valid_in<G: Adjacency>(&self, g: &G) -> bool {
        check_walk(g, &self.0, false).is_ok()
    }

    pub fn reversed(&self) -> Path {
        Path(self.0.iter().rev().copied().collect())
    }
}

/// A cycle on at least three distinct vertices; the closing edge runs from
/// the last listed vertex back to the first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    pub fn new<G: Adjacency>(g: &G, vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "a cycle needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        check_walk(g, &vertices, true)?;
        Ok(Cycle(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Number of edges, equal to the number of vertices.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Hamilton cycle of `g`: valid in `g` and covering every vertex.
    pub fn is_hamilton_cycle_of<G: Adjacency>(&self, g: &G) -> bool {
        self.0.len() == g.vertex_count() && check_walk(g, &self.0, true).is_ok()
    }
}

fn check_walk<G: Adjacency>(g: &G, vertices: &[usize], closed: bool) -> Result<()> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    for &v in vertices {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if seen[v] {
            return Err(Error::InvalidInput(format!("vertex {v} repeated")));
        }
        seen[v] = true;
    }
    for w in vertices.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(Error::InvalidInput(format!("({}, {}) is not an edge", w[0], w[1])));
        }
    }
    if closed {
        let (first, last) = (vertices[0], vertices[vertices.len() - 1]);
        if !g.has_edge(last, first) {
            return Err(Error::InvalidInput(format!("closing pair ({last}, {first}) is not an edge")));
        }
    }
    Ok(())
}
