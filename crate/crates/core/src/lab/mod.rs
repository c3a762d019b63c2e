//! Extremal constructions and brute-force exploration of `g(k, m)`, the
//! least `n` such that every graph of chromatic number at least `n` has a
//! `(k+1)`-connected subgraph of chromatic number at least `m`.

pub mod catalog;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, BudgetExhausted, BudgetKind};
use crate::coloring::{chromatic_number, find_coloring, greedy_clique, ColorSet, Color, SolveError};
use crate::connectivity::vertex_connectivity_at_least;
use crate::formats::to_graph6;
use crate::graph::{Graph, VertexSet};
use crate::proof::Variant;
use crate::template::Template;
use crate::witness::verify_witness;

pub use catalog::{canonical_form, canonical_graph6, catalog, graphs_of_order, ingest_graph6_catalog};

/// Default largest order for [`theorem_oracle`].
pub const DEFAULT_ORACLE_BOUND: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabError {
    #[error("k must be positive")]
    ZeroK,
    #[error("palette of {csize} colors is below 2k-1 = {need}")]
    PaletteTooSmall { csize: usize, need: usize },
    #[error("graph on {n} vertices exceeds the oracle bound {bound}")]
    TooLarge { n: usize, bound: usize },
    #[error(transparent)]
    Budget(#[from] BudgetExhausted),
    #[error("construction check failed: {0}")]
    Construction(String),
}

impl LabError {
    pub fn is_indeterminate(&self) -> bool {
        matches!(self, LabError::Budget(_))
    }
}

impl From<SolveError> for LabError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Budget(b) => LabError::Budget(b),
            other => LabError::Construction(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionLabel {
    Star,
    HConstruction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionInstance {
    pub graph: Graph,
    pub template: Template,
    pub colorset: ColorSet,
    pub k: usize,
    pub expected_chi: usize,
    pub label: ConstructionLabel,
}

impl ConstructionInstance {
    /// Re-checks the witness conditions and the chromatic number.
    pub fn verify(&self, budget: &Budget) -> Result<(), LabError> {
        if !verify_witness(&self.graph, &self.template, self.k, self.colorset, budget)? {
            return Err(LabError::Construction(format!("{:?} template is not a witness", self.label)));
        }
        let chi = chromatic_number(&self.graph, budget)?;
        if chi != self.expected_chi {
            return Err(LabError::Construction(format!(
                "chromatic number {chi}, expected {}",
                self.expected_chi
            )));
        }
        Ok(())
    }
}

/// Star with `2k - 1` leaves precolored `1..2k-1`; the center forbids the
/// `k - 1` remaining colors of a `(3k-2)`-color palette. Every edge is a
/// bridge, so a palette of `3k - 2` colors does not force 2-connectivity.
pub fn star_witness(k: usize) -> Result<ConstructionInstance, LabError> {
    if k == 0 {
        return Err(LabError::ZeroK);
    }
    let leaves = 2 * k - 1;
    let graph = Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star edges");
    let mut template = Template::empty(leaves + 1);
    for v in 1..=leaves {
        template.set_precolor(v, v as Color);
    }
    template.set_forbidden(0, (2 * k..=3 * k - 2).map(|c| c as Color));
    let inst = ConstructionInstance {
        expected_chi: 2,
        graph,
        template,
        colorset: ColorSet::new((3 * k - 2) as u32),
        k,
        label: ConstructionLabel::Star,
    };
    inst.verify(&Budget::default())?;
    Ok(inst)
}

/// Stable set `S` of `2k - 1` vertices, precolored distinctly and joined to
/// a clique `K` on `m - 2` vertices, `m = csize - 2k + 4`. The template is a
/// witness for `csize` colors while `χ = csize - 2k + 3`.
pub fn h_construction(k: usize, csize: usize) -> Result<ConstructionInstance, LabError> {
    if k == 0 {
        return Err(LabError::ZeroK);
    }
    if csize < 2 * k - 1 {
        return Err(LabError::PaletteTooSmall { csize, need: 2 * k - 1 });
    }
    let s = 2 * k - 1;
    let m = csize + 4 - 2 * k;
    let n = s + m - 2;
    let mut edges = Vec::new();
    for a in s..n {
        for b in a + 1..n {
            edges.push((a, b));
        }
        for v in 0..s {
            edges.push((v, a));
        }
    }
    let graph = Graph::from_edges(n, edges).expect("construction edges");
    let mut template = Template::empty(n);
    for v in 0..s {
        template.set_precolor(v, v as Color + 1);
    }
    let inst = ConstructionInstance {
        graph,
        template,
        colorset: ColorSet::new(csize as u32),
        k,
        expected_chi: m - 1,
        label: ConstructionLabel::HConstruction,
    };
    inst.verify(&Budget::default())?;
    Ok(inst)
}

fn degeneracy(g: &Graph) -> usize {
    let n = g.n();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut best = 0;
    for _ in 0..n {
        let v = (0..n).filter(|&v| !gone[v]).min_by_key(|&v| deg[v]).unwrap();
        best = best.max(deg[v]);
        gone[v] = true;
        for &u in g.neighbors(v) {
            if !gone[u] {
                deg[u] -= 1;
            }
        }
    }
    best
}

/// Largest induced subgraph (first found among equal orders, in increasing
/// mask order) that is `kappa`-connected, has at least `min_order` vertices
/// and chromatic number at least `min_chi`.
pub fn qualifying_subgraph(
    g: &Graph,
    kappa: usize,
    min_order: usize,
    min_chi: usize,
    budget: &Budget,
) -> Result<Option<VertexSet>, LabError> {
    let n = g.n();
    assert!(n < 64, "subset search is limited to fewer than 64 vertices");
    let floor = min_order.max(kappa + 1).max(min_chi);
    let mut visited = 0u64;
    for size in (floor..=n).rev() {
        let mut mask: u64 = (1u64 << size) - 1;
        let end = if n == 64 { u64::MAX } else { 1u64 << n };
        while mask < end {
            visited += 1;
            if visited > budget.subsets {
                return Err(BudgetExhausted { what: BudgetKind::Subsets, limit: budget.subsets }.into());
            }
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let h = g.induced(&set).expect("subset in range").graph;
            if qualifies(&h, kappa, min_chi, budget)? {
                return Ok(Some(set.into_iter().collect()));
            }
            if size == 0 {
                break;
            }
            // next mask with the same popcount
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    Ok(None)
}

fn qualifies(h: &Graph, kappa: usize, min_chi: usize, budget: &Budget) -> Result<bool, LabError> {
    if h.vertices().any(|v| h.degree(v) < kappa) || degeneracy(h) + 1 < min_chi {
        return Ok(false);
    }
    if !vertex_connectivity_at_least(h, kappa) {
        return Ok(false);
    }
    if min_chi <= 1 || greedy_clique(h).len() >= min_chi {
        return Ok(true);
    }
    Ok(find_coloring(h, ColorSet::new(min_chi as u32 - 1), budget)?.is_none())
}

/// Brute-force check of the extraction guarantee on `g`: vacuously true when
/// `χ(g)` is below the variant's threshold, otherwise true iff some
/// `(k+1)`-connected induced subgraph has more than `χ - k` vertices and the
/// variant's chromatic number. Induced subgraphs suffice because adding
/// edges on a fixed vertex set preserves both properties.
pub fn theorem_oracle(
    g: &Graph,
    k: usize,
    variant: Variant,
    bound: usize,
    budget: &Budget,
) -> Result<bool, LabError> {
    if k == 0 {
        return Err(LabError::ZeroK);
    }
    if g.n() > bound {
        return Err(LabError::TooLarge { n: g.n(), bound });
    }
    let chi = chromatic_number(g, budget)?;
    if chi < variant.min_chromatic(k) {
        return Ok(true);
    }
    let target = variant.chromatic_guarantee(k, chi);
    Ok(qualifying_subgraph(g, k + 1, chi + 1 - k, target, budget)?.is_some())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GVerdict {
    /// Some graph with `χ = n` has no `(k+1)`-connected subgraph with `χ ≥ m`.
    LowerBoundWitness,
    /// No such graph in the catalog.
    UpperBoundConsistent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GBoundRecord {
    pub k: usize,
    pub m: usize,
    pub n: usize,
    /// graph6 of the first witness in catalog order.
    pub witness_graph: Option<String>,
    pub verdict: GVerdict,
    pub graphs_scanned: usize,
    /// Graphs skipped because a budget ran out; nonzero marks a partial row.
    pub indeterminate: usize,
    /// A witness at or above the proven upper bound on `g(k, m)`.
    pub violation: bool,
}

/// Proven upper bound `max(m + 2k - 2, ⌈49k/16⌉)` on `g(k, m)`.
pub fn g_upper_bound(k: usize, m: usize) -> usize {
    (m + 2 * k - 2).max((49 * k).div_ceil(16))
}

/// One record per chromatic number `n = 1..=n_max`, scanning the catalog
/// graphs of order at most `n_max`. Rows are ordered by `n`; the witness is
/// the first in catalog order, so output depends only on the catalog.
pub fn empirical_g(
    k: usize,
    m: usize,
    n_max: usize,
    graphs: &[Graph],
    budget: &Budget,
) -> Result<Vec<GBoundRecord>, LabError> {
    if k == 0 {
        return Err(LabError::ZeroK);
    }
    let eligible: Vec<&Graph> = graphs.iter().filter(|g| g.n() <= n_max && g.n() > 0).collect();
    // (χ, is a witness); χ is None when its budget ran out
    let scanned: Vec<(Option<usize>, Result<bool, LabError>)> = eligible
        .par_iter()
        .map(|g| {
            let chi = match chromatic_number(g, budget) {
                Ok(c) => c,
                Err(e) => return (None, Err(e.into())),
            };
            if chi < m {
                return (Some(chi), Ok(true));
            }
            let found = qualifying_subgraph(g, k + 1, 0, m, budget).map(|s| s.is_none());
            (Some(chi), found)
        })
        .collect();
    let bound = g_upper_bound(k, m);
    let mut rows: Vec<GBoundRecord> = (1..=n_max)
        .map(|n| GBoundRecord {
            k,
            m,
            n,
            witness_graph: None,
            verdict: GVerdict::UpperBoundConsistent,
            graphs_scanned: 0,
            indeterminate: 0,
            violation: false,
        })
        .collect();
    let mut unknown_chi = 0;
    for (g, (chi, result)) in eligible.iter().zip(scanned) {
        let Some(chi) = chi else {
            unknown_chi += 1;
            continue;
        };
        let row = &mut rows[chi - 1];
        row.graphs_scanned += 1;
        match result {
            Ok(true) if row.witness_graph.is_none() => {
                row.witness_graph = Some(to_graph6(g));
                row.verdict = GVerdict::LowerBoundWitness;
                row.violation = chi >= bound;
            }
            Err(e) if e.is_indeterminate() => row.indeterminate += 1,
            Err(e) => return Err(e),
            _ => {}
        }
    }
    // graphs whose chromatic number could not be settled taint every row
    if unknown_chi > 0 {
        for row in &mut rows {
            row.indeterminate += unknown_chi;
        }
    }
    Ok(rows)
}
