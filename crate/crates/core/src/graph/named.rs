//! Small named graphs used as fixtures and sanity checks.

use super::Graph;

pub fn path_graph(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
}

/// `C_n` for `n >= 3`; smaller `n` gives the path graph.
pub fn cycle_graph(n: usize) -> Graph {
    if n < 3 {
        return path_graph(n);
    }
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
        .expect("bipartite graph is simple")
}

/// `K_{1,leaves}` with the centre at vertex 0.
pub fn star(leaves: usize) -> Graph {
    complete_bipartite(1, leaves)
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("petersen is simple")
}

/// Disjoint union of `copies` cliques of order `size`.
pub fn disjoint_cliques(copies: usize, size: usize) -> Graph {
    let edges = (0..copies).flat_map(|c| {
        let base = c * size;
        (0..size).flat_map(move |i| (i + 1..size).map(move |j| (base + i, base + j)))
    });
    Graph::from_edges(copies * size, edges).expect("cliques are simple")
}
