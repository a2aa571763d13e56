//! Hamilton cycle search.
//!
//! * [`exact_hamiltonian`] and [`exact_longest_path`] decide small instances
//!   completely.
//! * [`rotation_extension_search`] is a budgeted heuristic for large graphs.
//!   It never reports a graph as non-Hamiltonian.
//! * [`augment_with_boosters`] grows a sparse backbone inside a host graph by
//!   adding boosters until a Hamilton cycle appears.

mod augment;
pub(crate) mod exact;
mod search;

pub use augment::augment_with_boosters;
pub use exact::{
    exact_hamiltonian, exact_hamiltonian_capped, exact_longest_path, exact_longest_path_capped,
    exact_longest_path_witness, EXACT_HAMILTON_CAP, EXACT_PATH_CAP,
};
pub use search::{default_budget, rotation_extension_search, MAX_RESTARTS};

use serde::{Deserialize, Serialize};

use crate::graph::Cycle;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum HamStatus {
    Hamiltonian { cycle: Cycle },
    /// Only the exact solver reports this.
    NotHamiltonian,
    /// The heuristic gave up; says nothing about the graph.
    NotFound,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HamStats {
    pub rotations: u64,
    pub extensions: u64,
    pub boosters_added: usize,
    pub restarts: u64,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HamResult {
    #[serde(flatten)]
    pub status: HamStatus,
    pub stats: HamStats,
    /// Edges added to the input graph (booster pipeline only).
    pub added_edges: Vec<(usize, usize)>,
}

impl HamResult {
    pub fn is_hamiltonian(&self) -> bool {
        matches!(self.status, HamStatus::Hamiltonian { .. })
    }

    pub fn cycle(&self) -> Option<&Cycle> {
        match &self.status {
            HamStatus::Hamiltonian { cycle } => Some(cycle),
            _ => None,
        }
    }
}
