//! Constructive extension of good templates under a small chromatic number,
//! and the end-to-end extraction of highly connected subgraphs.
//!
//! Both extension pipelines take a graph, a good template (cost `< 2k²`,
//! every `|F(v)| < k`) and a partition of the vertices into stable classes,
//! and build a proper coloring that respects the template. Every counting
//! bound the construction relies on is checked at runtime; a failed bound is
//! reported as [`ProofError::Invariant`] together with the trace so far.

mod extend;
mod extract;
mod matching;
mod reduction;

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{Color, ColorSet};
use crate::graph::Graph;
use crate::sequence::SequenceError;
use crate::template::{Template, TemplateError};
use crate::witness::cost_limit;

pub use extend::{extend_316k, extend_4k, min_palette_316k, ColoringBranch, ExtensionOutcome};
pub use extract::{extract_subgraph, ExtractError, ExtractionReport, Variant};
pub use matching::distinct_representatives;
pub use reduction::{reduce_classes, ClassRecord, ReductionState};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProofError {
    #[error(transparent)]
    Template(#[from] TemplateError),
    #[error("vertex {0} is missing from the partition or listed twice")]
    PartitionCover(usize),
    #[error("partition class {class} contains adjacent vertices {u} and {v}")]
    PartitionNotStable { class: usize, u: usize, v: usize },
    #[error("hypothesis {label} fails: {detail}")]
    Hypothesis { label: &'static str, detail: String },
    #[error("invariant {label} fails: {detail}")]
    Invariant { label: &'static str, detail: String, trace: Box<PipelineTrace> },
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

impl ProofError {
    pub fn is_input_error(&self) -> bool {
        !matches!(self, ProofError::Invariant { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub label: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub stage: &'static str,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snapshot: Option<serde_json::Value>,
}

/// A greedy step that failed where a matching of the same lists succeeded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub stage: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PipelineTrace {
    pub stages: Vec<StageRecord>,
    pub discrepancies: Vec<Discrepancy>,
}

impl PipelineTrace {
    pub fn check_count(&self) -> usize {
        self.stages.iter().map(|s| s.checks.len()).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("trace serializes")
    }
}

/// Shared pipeline state: the template's constraints, the partition with
/// placeholders for classes that have no uncolored vertex, and the partial
/// coloring built so far.
#[derive(Debug, Clone)]
pub(crate) struct Setup {
    pub k: usize,
    pub palette: ColorSet,
    pub real_n: usize,
    pub class_of: Vec<usize>,
    pub forbidden: Vec<Vec<Color>>,
    /// `P_i`: uncolored members, or one placeholder vertex.
    pub open: Vec<Vec<usize>>,
    /// `|S ∩ S_i|`.
    pub precolored_in_class: Vec<usize>,
    pub precolored: usize,
    pub assigned: Vec<Option<Color>>,
    pub trace: PipelineTrace,
}

impl Setup {
    pub fn new(
        g: &Graph,
        t: &Template,
        partition: &[Vec<usize>],
        k: usize,
        palette: ColorSet,
    ) -> Result<Setup, ProofError> {
        if k == 0 {
            return Err(ProofError::Hypothesis { label: "positive-k", detail: "k = 0".into() });
        }
        t.validate(g, palette)?;
        let cost = t.k_cost(k);
        if cost >= cost_limit(k) || t.max_forbidden() >= k {
            return Err(ProofError::Hypothesis {
                label: "good-template",
                detail: format!(
                    "cost {cost} (limit {}), max |F(v)| {} (limit {})",
                    cost_limit(k),
                    t.max_forbidden(),
                    k - 1
                ),
            });
        }
        let n = g.n();
        let mut class_of = vec![usize::MAX; n];
        for (i, class) in partition.iter().enumerate() {
            for &v in class {
                if v >= n || class_of[v] != usize::MAX {
                    return Err(ProofError::PartitionCover(v.min(n)));
                }
                class_of[v] = i;
            }
            for (a, &u) in class.iter().enumerate() {
                if let Some(&v) = class[a + 1..].iter().find(|&&v| g.has_edge(u, v)) {
                    return Err(ProofError::PartitionNotStable { class: i, u, v });
                }
            }
        }
        if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(ProofError::PartitionCover(v));
        }
        let mut forbidden: Vec<Vec<Color>> = (0..n).map(|v| t.forbidden(v).to_vec()).collect();
        let mut assigned: Vec<Option<Color>> = (0..n).map(|v| t.color_of(v)).collect();
        let mut open = Vec::with_capacity(partition.len());
        let mut precolored_in_class = Vec::with_capacity(partition.len());
        for (i, class) in partition.iter().enumerate() {
            let mut members: Vec<usize> = class.iter().copied().filter(|&v| !t.is_precolored(v)).collect();
            members.sort_unstable();
            precolored_in_class.push(class.len() - members.len());
            if members.is_empty() {
                let placeholder = class_of.len();
                class_of.push(i);
                forbidden.push(Vec::new());
                assigned.push(None);
                members.push(placeholder);
            }
            open.push(members);
        }
        Ok(Setup {
            k,
            palette,
            real_n: n,
            class_of,
            forbidden,
            open,
            precolored_in_class,
            precolored: t.precolored_count(),
            assigned,
            trace: PipelineTrace::default(),
        })
    }

    pub fn classes(&self) -> usize {
        self.open.len()
    }

    pub fn weight(&self, set: &[usize]) -> usize {
        set.iter().map(|&v| self.forbidden[v].len()).sum()
    }

    /// `t = 2k - |S|`.
    pub fn slack(&self) -> usize {
        2 * self.k - self.precolored
    }

    fn color_mask(&self) -> Vec<bool> {
        vec![false; self.palette.size() as usize + 1]
    }

    /// Colors on assigned vertices outside class `i` (or everywhere when
    /// `i` is `None`).
    pub fn used_outside(&self, class: Option<usize>) -> Vec<bool> {
        let mut mask = self.color_mask();
        for (v, c) in self.assigned.iter().enumerate() {
            if let Some(c) = c {
                if Some(self.class_of[v]) != class {
                    mask[*c as usize] = true;
                }
            }
        }
        mask
    }

    /// Palette colors that are not blocked and not forbidden on any of `set`.
    pub fn list(&self, blocked: &[bool], set: &[usize]) -> Vec<Color> {
        self.palette
            .colors()
            .filter(|&c| !blocked[c as usize] && set.iter().all(|&v| !self.forbidden[v].contains(&c)))
            .collect()
    }

    pub fn paint(&mut self, set: &[usize], c: Color) {
        for &v in set {
            self.assigned[v] = Some(c);
        }
    }

    pub fn distinct_on(&self, set: &[usize]) -> usize {
        let mut cs: Vec<Color> = set.iter().filter_map(|&v| self.assigned[v]).collect();
        cs.sort_unstable();
        cs.dedup();
        cs.len()
    }

    pub fn stage(&mut self, stage: &'static str) {
        self.trace.stages.push(StageRecord { stage, checks: Vec::new(), snapshot: None });
    }

    pub fn snapshot(&mut self, value: serde_json::Value) {
        if let Some(s) = self.trace.stages.last_mut() {
            s.snapshot = Some(value);
        }
    }

    /// Records a check; a failure aborts with the trace so far.
    pub fn check(&mut self, label: &'static str, ok: bool, detail: String) -> Result<(), ProofError> {
        if self.trace.stages.is_empty() {
            self.stage("setup");
        }
        let record = CheckRecord { label, passed: ok, detail: detail.clone() };
        self.trace.stages.last_mut().unwrap().checks.push(record);
        if ok {
            Ok(())
        } else {
            Err(ProofError::Invariant { label, detail, trace: Box::new(self.trace.clone()) })
        }
    }

    /// Gives the sets distinct colors, each from its list and avoiding
    /// `taken`: first greedily in the given order, least color first; if that
    /// gets stuck, by matching, which is logged as a discrepancy.
    pub fn assign_distinct(
        &mut self,
        stage: &'static str,
        lists: &[Vec<Color>],
        taken: &mut Vec<bool>,
    ) -> Result<Vec<Color>, ProofError> {
        let mut local = taken.clone();
        let mut out = Vec::with_capacity(lists.len());
        for list in lists {
            match list.iter().find(|&&c| !local[c as usize]) {
                Some(&c) => {
                    local[c as usize] = true;
                    out.push(c);
                }
                None => break,
            }
        }
        if out.len() < lists.len() {
            let stuck = out.len();
            match distinct_representatives(lists, taken) {
                Some(found) => {
                    self.trace.discrepancies.push(Discrepancy {
                        stage,
                        detail: format!("greedy stuck at set {stuck} of {}; matching succeeded", lists.len()),
                    });
                    out = found;
                }
                None => {
                    self.check(
                        "distinct-colors-available",
                        false,
                        format!("{stage}: no distinct representatives for {} lists", lists.len()),
                    )?;
                }
            }
        }
        for &c in &out {
            taken[c as usize] = true;
        }
        Ok(out)
    }

    /// Final coloring of the real vertices.
    pub fn finish(&mut self, g: &Graph, t: &Template) -> Result<crate::coloring::Coloring, ProofError> {
        self.stage("assemble");
        let missing = (0..self.real_n).find(|&v| self.assigned[v].is_none());
        self.check("all-vertices-colored", missing.is_none(), format!("first uncolored: {missing:?}"))?;
        let f = crate::coloring::Coloring::new(self.assigned[..self.real_n].iter().map(|c| c.unwrap()).collect());
        let verdict = crate::coloring::check_respects(g, t, &f, self.palette);
        self.check("respects-template", verdict.is_ok(), format!("{verdict:?}"))?;
        Ok(f)
    }
}

/// Colors the sets, each from its list, using at most `lists.len() - 1`
/// colors: the lexicographically first pair of intersecting lists shares its
/// least common color; every other set takes the least color already in use
/// that its list allows, else the least color of its list. `None` if some
/// list is empty or all lists are pairwise disjoint.
pub(crate) fn pair_sharing_assignment(lists: &[Vec<Color>]) -> Option<Vec<Color>> {
    if lists.iter().any(Vec::is_empty) {
        return None;
    }
    let (a, b, x) = (0..lists.len()).find_map(|a| {
        (a + 1..lists.len()).find_map(|b| lists[a].iter().find(|c| lists[b].contains(c)).map(|&x| (a, b, x)))
    })?;
    let mut used = vec![x];
    let mut out = vec![0; lists.len()];
    out[a] = x;
    out[b] = x;
    for (j, list) in lists.iter().enumerate() {
        if j == a || j == b {
            continue;
        }
        let mut reuse: Vec<Color> = used.iter().copied().filter(|c| list.contains(c)).collect();
        reuse.sort_unstable();
        let c = reuse.first().copied().unwrap_or(list[0]);
        if !used.contains(&c) {
            used.push(c);
        }
        out[j] = c;
    }
    Some(out)
}

pub(crate) fn count_true(mask: &[bool]) -> usize {
    mask.iter().filter(|&&b| b).count()
}
