use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Work limits for the exponential searches. Every exact routine takes one of
/// these and reports [`BudgetExhausted`] instead of guessing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Search nodes (color assignments) per solver call.
    pub solver_nodes: u64,
    /// Candidate templates per witness enumeration.
    pub templates: u64,
    /// Vertex subsets per subgraph search.
    pub subsets: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            solver_nodes: 50_000_000,
            templates: 2_000_000,
            subsets: 1 << 22,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            solver_nodes: u64::MAX,
            templates: u64::MAX,
            subsets: u64::MAX,
        }
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[error("{what} budget of {limit} exhausted")]
pub struct BudgetExhausted {
    pub what: BudgetKind,
    pub limit: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BudgetKind {
    SolverNodes,
    Templates,
    Subsets,
}

impl std::fmt::Display for BudgetKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BudgetKind::SolverNodes => "solver-node",
            BudgetKind::Templates => "template",
            BudgetKind::Subsets => "subset",
        })
    }
}
