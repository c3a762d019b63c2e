use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, BudgetExhausted};
use crate::coloring::{chromatic_number, SolveError};
use crate::connectivity::vertex_connectivity_at_least;
use crate::graph::{Graph, VertexSet};
use crate::shrink::{minimal_inextensible_subgraph, ShrinkError, ShrinkMode};
use crate::witness::Witness;

/// Which chromatic guarantee to check on the extracted subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// `χ(G) ≥ ⌈49k/16⌉`, guarantee `χ(H) ≥ χ(G) - 2k + 2`.
    #[serde(rename = "thm_main")]
    ThmMain,
    /// `χ(G) ≥ 4k - 1`, guarantee `χ(H) ≥ χ(G) - 2k + 1`.
    #[serde(rename = "prop_4k")]
    Prop4k,
}

impl Variant {
    pub fn min_chromatic(self, k: usize) -> usize {
        match self {
            Variant::ThmMain => (49 * k).div_ceil(16),
            Variant::Prop4k => 4 * k - 1,
        }
    }

    /// Guaranteed `χ(H)` for a graph of chromatic number `chi`.
    pub fn chromatic_guarantee(self, k: usize, chi: usize) -> usize {
        match self {
            Variant::ThmMain => chi + 2 - 2 * k,
            Variant::Prop4k => chi + 1 - 2 * k,
        }
    }
}

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("k must be positive")]
    ZeroK,
    #[error("χ(G) = {chi} is below the required {need}")]
    ChromaticTooSmall { chi: usize, need: usize },
    #[error(transparent)]
    Budget(#[from] BudgetExhausted),
    #[error(transparent)]
    Shrink(ShrinkError),
}

impl ExtractError {
    pub fn is_indeterminate(&self) -> bool {
        matches!(
            self,
            ExtractError::Budget(_)
                | ExtractError::Shrink(ShrinkError::Indeterminate { .. })
                | ExtractError::Shrink(ShrinkError::Witness(crate::witness::WitnessError::Solve(
                    SolveError::Budget(_)
                )))
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtractionReport {
    pub variant: Variant,
    pub k: usize,
    pub chromatic_number: usize,
    pub vertices: VertexSet,
    pub subgraph_chromatic_number: usize,
    /// `H` is `(k+1)`-connected.
    pub connectivity: bool,
    /// `|H| > χ(G) - k`.
    pub order: bool,
    pub chromatic: bool,
    pub mode: ShrinkMode,
    pub certified_minimal: bool,
}

impl ExtractionReport {
    pub fn passed(&self) -> bool {
        self.connectivity && self.order && self.chromatic
    }
}

/// Shrinks `g` to a minimally inextensible subgraph for `χ(g) - 1` colors,
/// starting from the empty template, and checks the three guarantees on the
/// result with independent oracles.
pub fn extract_subgraph(
    g: &Graph,
    k: usize,
    variant: Variant,
    mode: ShrinkMode,
    budget: &Budget,
) -> Result<ExtractionReport, ExtractError> {
    if k == 0 {
        return Err(ExtractError::ZeroK);
    }
    let chi = chromatic_number(g, budget)?;
    let need = variant.min_chromatic(k);
    if chi < need {
        return Err(ExtractError::ChromaticTooSmall { chi, need });
    }
    let start = Witness::empty_for(g, k, chi);
    let out = minimal_inextensible_subgraph(g, &start, mode, budget).map_err(ExtractError::Shrink)?;
    let h = g.induced(out.vertices.as_slice()).expect("shrunk set in range").graph;
    let sub_chi = chromatic_number(&h, budget)?;
    Ok(ExtractionReport {
        variant,
        k,
        chromatic_number: chi,
        subgraph_chromatic_number: sub_chi,
        connectivity: vertex_connectivity_at_least(&h, k + 1),
        order: h.n() + k > chi,
        chromatic: sub_chi >= variant.chromatic_guarantee(k, chi),
        vertices: out.vertices,
        mode,
        certified_minimal: out.certified_minimal,
    })
}
