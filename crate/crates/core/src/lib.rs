pub mod dfs;
pub mod error;
pub mod expander;
pub mod graph;
pub mod harness;
pub mod ham;
pub mod models;
pub mod posa;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{Adjacency, Cycle, DiGraph, Graph, Path};
