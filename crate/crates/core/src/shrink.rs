//! Shrinking an inextensible graph to a minimally inextensible induced
//! subgraph.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::Budget;
use crate::coloring::{find_respecting_coloring, SolveError};
use crate::connectivity::{find_cutset, vertex_connectivity_at_least};
use crate::graph::{Graph, VertexSet};
use crate::template::Template;
use crate::witness::{enumerate_witness, goodify, is_candidate, Witness, WitnessError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShrinkMode {
    /// Every single-vertex deletion is certified extensible by exhaustive
    /// witness search, so the result is minimally inextensible.
    Exact,
    /// Only witnesses derived from the current one are tried: deleting an
    /// uncolored vertex, deleting a precolored vertex while forbidding its
    /// color on its uncolored neighbors, and splitting along a cutset of at
    /// most `k` vertices.
    Heuristic,
}

#[derive(Debug, Error)]
pub enum ShrinkError {
    #[error("starting template is not a witness on the input graph")]
    NotAWitness,
    #[error("search stopped at {} vertices: {cause}", partial.len())]
    Indeterminate { partial: VertexSet, cause: SolveError },
    #[error("witness bookkeeping failed: {0}")]
    Witness(#[from] WitnessError),
    #[error("glued coloring respects the current witness; it was not a witness")]
    GlueContradiction,
}

/// Structural facts expected of a minimally inextensible graph when
/// `|C| ≥ 3k - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShrinkChecks {
    /// `|H| > |C| - k + 1`.
    pub order_bound: bool,
    /// `H` is `(k+1)`-connected.
    pub connectivity: bool,
    /// Under the good template: each precolored vertex has more than `k`
    /// uncolored neighbors, each uncolored vertex more than `|C| - k`
    /// neighbors.
    pub degree_bounds: bool,
}

impl ShrinkChecks {
    pub fn all(&self) -> bool {
        self.order_bound && self.connectivity && self.degree_bounds
    }
}

#[derive(Debug, Clone)]
pub struct ShrinkOutcome {
    /// Vertex set of the result in the input graph's ids.
    pub vertices: VertexSet,
    /// Witness on the induced subgraph (vertex `i` is `vertices[i]`).
    pub witness: Witness,
    pub mode: ShrinkMode,
    /// True in exact mode: every proper induced subgraph is extensible.
    pub certified_minimal: bool,
    /// Present when `|C| ≥ 3k - 1`.
    pub checks: Option<ShrinkChecks>,
}

/// Repeatedly deletes a vertex (or, in heuristic mode, a whole side of a
/// small cutset) while a witness survives on what remains.
pub fn minimal_inextensible_subgraph(
    g: &Graph,
    start: &Witness,
    mode: ShrinkMode,
    budget: &Budget,
) -> Result<ShrinkOutcome, ShrinkError> {
    let (k, colors) = (start.k, start.colors);
    let verified = crate::witness::verify_witness(g, &start.template, k, colors, budget)
        .map_err(|cause| ShrinkError::Indeterminate { partial: VertexSet::all(g.n()), cause })?;
    if !verified {
        return Err(ShrinkError::NotAWitness);
    }
    let can_goodify = colors.size() as usize + 1 >= 3 * k;
    let mut current = VertexSet::all(g.n());
    let mut witness = start.clone();

    'shrink: loop {
        let sub = g.induced(current.as_slice()).expect("current set is in range");
        if can_goodify && mode == ShrinkMode::Heuristic {
            witness = goodify(&sub.graph, &witness)?;
        }
        let partial = current.clone();
        let fail = |cause: SolveError| ShrinkError::Indeterminate { partial: partial.clone(), cause };
        for i in 0..current.len() {
            let keep = VertexSet::all(current.len()).without(i);
            let smaller = sub.graph.induced(keep.as_slice()).unwrap().graph;
            let found = match mode {
                ShrinkMode::Exact => enumerate_witness(&smaller, k, colors, budget).map_err(fail)?,
                ShrinkMode::Heuristic => {
                    deletion_witness(&sub.graph, &smaller, &witness, i, budget).map_err(fail)?
                }
            };
            if let Some(w) = found {
                current = sub.originals(keep.as_slice());
                witness = w;
                continue 'shrink;
            }
        }
        if mode == ShrinkMode::Heuristic {
            if let Some((keep, w)) = cutset_witness(&sub.graph, &witness, budget).map_err(|e| match e {
                ShrinkError::Indeterminate { cause, .. } => fail(cause),
                other => other,
            })? {
                current = sub.originals(keep.as_slice());
                witness = w;
                continue 'shrink;
            }
        }
        break;
    }

    let sub = g.induced(current.as_slice()).unwrap().graph;
    let checks = if can_goodify {
        let good = goodify(&sub, &witness)?;
        Some(structural_checks(&sub, &good))
    } else {
        None
    };
    Ok(ShrinkOutcome {
        vertices: current,
        witness,
        mode,
        certified_minimal: mode == ShrinkMode::Exact,
        checks,
    })
}

/// Order, connectivity and degree facts for `h` under a good witness.
pub fn structural_checks(h: &Graph, good: &Witness) -> ShrinkChecks {
    let (k, size) = (good.k, good.colors.size() as usize);
    let t = &good.template;
    let degree_bounds = h.vertices().all(|v| {
        if t.is_precolored(v) {
            h.neighbors(v).iter().filter(|&&u| !t.is_precolored(u)).count() > k
        } else {
            h.degree(v) + k > size
        }
    });
    ShrinkChecks {
        order_bound: h.n() + k > size + 1,
        connectivity: vertex_connectivity_at_least(h, k + 1),
        degree_bounds,
    }
}

fn certify_candidate(
    g: &Graph,
    t: Template,
    w: &Witness,
    budget: &Budget,
) -> Result<Option<Witness>, SolveError> {
    if !is_candidate(&t, w.k) {
        return Ok(None);
    }
    if find_respecting_coloring(g, &t, w.colors, budget)?.is_some() {
        return Ok(None);
    }
    let cost = t.k_cost(w.k);
    Ok(Some(Witness { template: t, k: w.k, colors: w.colors, cost }))
}

/// Witness candidates on `g - v` built from the current witness.
fn deletion_witness(
    g: &Graph,
    smaller: &Graph,
    w: &Witness,
    v: usize,
    budget: &Budget,
) -> Result<Option<Witness>, SolveError> {
    let keep = VertexSet::all(g.n()).without(v);
    let restricted = w.template.restrict(&keep);
    if let Some(c) = w.template.color_of(v) {
        // forbid c(v) on the uncolored neighbors of v
        let mut shifted = restricted.clone();
        for &u in g.neighbors(v) {
            if !w.template.is_precolored(u) {
                let iu = if u > v { u - 1 } else { u };
                let mut f = w.template.forbidden(u).to_vec();
                f.push(c);
                shifted.set_forbidden(iu, f);
            }
        }
        if let Some(found) = certify_candidate(smaller, shifted, w, budget)? {
            return Ok(Some(found));
        }
    }
    certify_candidate(smaller, restricted, w, budget)
}

/// Splits along a cutset `X` with `|X| ≤ k`. With `B` the side of smaller
/// cost and `D = A ∪ X ∪ S`, either the restriction to `D` is already a
/// witness, or a respecting coloring of `G[D]` fixes the colors on `X` and
/// the resulting template on `G[B ∪ X]` is one. Returns the kept vertex set.
fn cutset_witness(
    g: &Graph,
    w: &Witness,
    budget: &Budget,
) -> Result<Option<(VertexSet, Witness)>, ShrinkError> {
    let Some(sep) = find_cutset(g, w.k) else {
        return Ok(None);
    };
    let t = &w.template;
    let cost = |side: &VertexSet| t.restrict(side).k_cost(w.k);
    let (a, b) = if cost(&sep.right) <= cost(&sep.left) {
        (sep.left, sep.right)
    } else {
        (sep.right, sep.left)
    };
    let indeterminate = |cause: SolveError| ShrinkError::Indeterminate { partial: VertexSet::all(g.n()), cause };
    for (a, b) in [(a.clone(), b.clone()), (b, a)] {
        if cost(&b) >= w.k * w.k || b.iter().all(|v| t.is_precolored(v)) {
            continue;
        }
        let d: VertexSet = a
            .iter()
            .chain(sep.cutset.iter())
            .chain(t.precolored().iter())
            .collect();
        let gd = g.induced(d.as_slice()).unwrap();
        let td = t.restrict(&d);
        let Some(fd) = find_respecting_coloring(&gd.graph, &td, w.colors, budget).map_err(indeterminate)?
        else {
            let cost = td.k_cost(w.k);
            return Ok(Some((d, Witness { template: td, k: w.k, colors: w.colors, cost })));
        };
        let color_in_d = |v: usize| fd.get(d.as_slice().binary_search(&v).unwrap());
        let bx: VertexSet = b.iter().chain(sep.cutset.iter()).collect();
        let gb = g.induced(bx.as_slice()).unwrap();
        let mut tb = t.restrict(&bx);
        for (i, v) in bx.iter().enumerate() {
            if sep.cutset.contains(v) {
                tb.set_precolor(i, color_in_d(v));
            }
        }
        if let Some(found) =
            certify_candidate(&gb.graph, tb, w, budget).map_err(indeterminate)?
        {
            return Ok(Some((bx, found)));
        }
        // A coloring of G[B ∪ X] agreeing with fd on X glues to a coloring
        // of G respecting T.
        return Err(ShrinkError::GlueContradiction);
    }
    Ok(None)
}
