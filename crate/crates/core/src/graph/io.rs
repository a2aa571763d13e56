//! Plain-text edge lists.
//!
//! ```text
//! n m [directed]
//! u v
//! ...
//! ```
//!
//! Vertices are 0-indexed. Undirected lists are written with `u < v` in
//! lexicographic order; the reader accepts either orientation but rejects
//! loops and repeated pairs. Blank lines and lines starting with `#` are
//! skipped.

use std::io::{BufRead, Write};

use super::{DiGraph, Graph};
use crate::error::{Error, Result};

/// Parsed contents of an edge-list file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeList {
    Undirected(Graph),
    Directed(DiGraph),
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<EdgeList> {
    let mut lines = reader
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| match l {
            Ok(s) => {
                let t = s.trim();
                !t.is_empty() && !t.starts_with('#')
            }
            Err(_) => true,
        });

    let (line_no, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    let header = header?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let directed = match tokens.as_slice() {
        [_, _] => false,
        [_, _, "directed"] => true,
        _ => {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected `n m [directed]`, got `{header}`"),
            })
        }
    };
    let n = parse_num(tokens[0], line_no)?;
    let m = parse_num(tokens[1], line_no)?;

    let mut pairs = Vec::with_capacity(m);
    for (line_no, line) in lines {
        let line = line?;
        let mut it = line.split_whitespace();
        let (u, v) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => (parse_num(a, line_no)?, parse_num(b, line_no)?),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected `u v`, got `{line}`"),
                })
            }
        };
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(Error::Parse {
            line: line_no,
            msg: format!("header announces {m} edges, found {}", pairs.len()),
        });
    }
    if directed {
        Ok(EdgeList::Directed(DiGraph::from_arcs(n, pairs)?))
    } else {
        Ok(EdgeList::Undirected(Graph::from_edges(n, pairs)?))
    }
}

pub fn write_graph<W: Write>(mut w: W, g: &Graph) -> Result<()> {
    writeln!(w, "{} {}", g.n(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

pub fn write_digraph<W: Write>(mut w: W, d: &DiGraph) -> Result<()> {
    writeln!(w, "{} {} directed", d.n(), d.arc_count())?;
    for (u, v) in d.arcs() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

/// Writes pairs in the given order, e.g. the edge order of a graph process.
pub fn write_pairs<W: Write>(mut w: W, n: usize, pairs: &[(usize, usize)]) -> Result<()> {
    writeln!(w, "{} {}", n, pairs.len())?;
    for &(u, v) in pairs {
        writeln!(w, "{} {}", u.min(v), u.max(v))?;
    }
    Ok(())
}

fn parse_num(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("`{tok}` is not a non-negative integer"),
    })
}
