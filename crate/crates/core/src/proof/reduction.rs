use serde::Serialize;

use super::{count_true, pair_sharing_assignment, PipelineTrace, ProofError, Setup};
use crate::coloring::{Color, ColorSet};
use crate::graph::Graph;
use crate::sequence::{critical_sequence, jump_profile, FitSequence, JumpProfile, WeightedClass};
use crate::template::Template;

/// Per-class outcome of the reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    pub index: usize,
    /// `P_i`, with a placeholder id `≥ n` if the class had no uncolored vertex.
    pub open: Vec<usize>,
    /// `|S ∩ S_i|`.
    pub precolored: usize,
    pub weight: usize,
    /// `p_i = ⌊w(P_i)/k⌋`.
    pub floor_weight: usize,
    pub sequence: FitSequence,
    pub profile: JumpProfile,
    /// `P_i'`, colored with at most `q_i` colors.
    pub reduced: Vec<usize>,
    /// `q_i`.
    pub reduced_count: usize,
    /// `t_i = p_i - q_i`.
    pub remainder_count: usize,
    /// `P_{i1}, …, P_{i,t_i+1}`, each of weight `< k`.
    pub remainder_parts: Vec<Vec<usize>>,
    /// `x_i = w(P_i ∖ P_i') - t_i k`.
    pub excess: i64,
}

impl ClassRecord {
    pub fn part_weights(&self, s: &ReductionState) -> Vec<usize> {
        self.remainder_parts.iter().map(|p| s.setup.weight(p)).collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionState {
    pub k: usize,
    pub palette: u32,
    /// `|S|`.
    pub precolored: usize,
    /// `t = 2k - |S|`.
    pub slack: usize,
    /// `p = Σ p_i`.
    pub floor_total: usize,
    /// `t' = t - p`.
    pub residual_slack: usize,
    /// `q = Σ q_i`.
    pub reduced_total: usize,
    pub classes: Vec<ClassRecord>,
    #[serde(skip)]
    pub(crate) setup: Setup,
}

impl ReductionState {
    pub fn trace(&self) -> &PipelineTrace {
        &self.setup.trace
    }

    /// Colors assigned so far, indexed by vertex (placeholders included).
    pub fn assigned(&self) -> &[Option<Color>] {
        &self.setup.assigned
    }

    pub fn real_vertex_count(&self) -> usize {
        self.setup.real_n
    }
}

/// Reduces every class in turn: from an increasing critical sequence of
/// `P_i`, colors a prefix `P_i'` of weight at least `q_i k` with at most
/// `q_i` colors, leaving `t_i + 1` parts of weight `< k`.
pub fn reduce_classes(
    g: &Graph,
    t: &Template,
    partition: &[Vec<usize>],
    k: usize,
    palette: ColorSet,
) -> Result<ReductionState, ProofError> {
    let setup = Setup::new(g, t, partition, k, palette)?;
    if (palette.size() as usize) + 1 < 3 * k {
        return Err(ProofError::Hypothesis {
            label: "palette-at-least-3k-1",
            detail: format!("|C| = {} < {}", palette.size(), 3 * k - 1),
        });
    }
    reduce(setup)
}

pub(crate) fn reduce(mut s: Setup) -> Result<ReductionState, ProofError> {
    let k = s.k;
    s.stage("reduction");
    let mut classes = Vec::with_capacity(s.classes());
    for i in 0..s.classes() {
        classes.push(reduce_class(&mut s, i)?);
    }

    let slack = s.slack();
    let total_weight: usize = classes.iter().map(|c| c.weight).sum();
    let floor_total: usize = classes.iter().map(|c| c.floor_weight).sum();
    let reduced_total: usize = classes.iter().map(|c| c.reduced_count).sum();
    s.check("weight-budget", k * slack > total_weight, format!("kt = {}, Σw(P_i) = {total_weight}", k * slack))?;
    s.check("floor-budget", floor_total < slack, format!("p = {floor_total}, t = {slack}"))?;
    let residual_slack = slack - floor_total;
    for c in &classes {
        let outside = count_true(&s.used_outside(Some(c.index)));
        let bound = s.precolored - c.precolored + reduced_total - c.reduced_count;
        s.check(
            "outside-colors-after-reduction",
            outside <= bound,
            format!("class {}: {outside} colors outside, bound {bound}", c.index),
        )?;
        s.check("excess-below-k", c.excess < k as i64, format!("class {}: x = {}", c.index, c.excess))?;
    }
    let positive_excess: i64 = classes.iter().map(|c| c.excess.max(0)).sum();
    s.check(
        "excess-budget",
        positive_excess < (k * residual_slack) as i64,
        format!("Σ max(x_i, 0) = {positive_excess}, kt' = {}", k * residual_slack),
    )?;
    let used: usize = classes.iter().map(|c| s.distinct_on(&c.reduced)).sum();
    s.check("reduced-total-colors", used <= reduced_total, format!("{used} colors, q = {reduced_total}"))?;
    s.snapshot(serde_json::json!({
        "slack": slack,
        "floor_total": floor_total,
        "residual_slack": residual_slack,
        "reduced_total": reduced_total,
        "classes": classes.iter().map(|c| serde_json::json!({
            "index": c.index,
            "weight": c.weight,
            "floor_weight": c.floor_weight,
            "reduced_count": c.reduced_count,
            "remainder_count": c.remainder_count,
            "excess": c.excess,
        })).collect::<Vec<_>>(),
    }));

    Ok(ReductionState {
        k,
        palette: s.palette.size(),
        precolored: s.precolored,
        slack,
        floor_total,
        residual_slack,
        reduced_total,
        classes,
        setup: s,
    })
}

fn reduce_class(s: &mut Setup, i: usize) -> Result<ClassRecord, ProofError> {
    let k = s.k;
    let members = s.open[i].clone();
    let weights = members.iter().map(|&v| s.forbidden[v].len()).collect();
    let class = WeightedClass::new(members.clone(), weights)?;
    let sequence = critical_sequence(&class, k)?;
    let profile = jump_profile(&sequence, k);
    let weight = class.total();
    let floor_weight = weight / k;

    let blocked = s.used_outside(None);
    let base = s.list(&blocked, &[]);
    s.check("reduction-palette", base.len() >= k, format!("class {i}: |L| = {}, k = {k}", base.len()))?;

    let mut terms = sequence.terms.clone();
    let mut term_weights = sequence.term_weights.clone();
    let mut color: Vec<Option<Color>> = vec![None; terms.len()];
    let ell = profile.landmarks.len();
    for r in 0..ell - 1 {
        let (lo, hi) = (profile.positions[r] - 1, profile.positions[r + 1] - 1);
        let budget = profile.landmarks[r + 1] - profile.landmarks[r];
        let window_weight: usize = term_weights[lo..=hi].iter().sum();
        s.check(
            "window-weight",
            window_weight < (hi - lo) * k,
            format!("class {i}, window {}..={}: weight {window_weight}", lo + 1, hi + 1),
        )?;
        let lists: Vec<Vec<Color>> = (lo..=hi).map(|j| s.list(&blocked, &terms[j])).collect();
        let Some(out) = pair_sharing_assignment(&lists) else {
            s.check("window-shared-color", false, format!("class {i}: window lists {lists:?}"))?;
            unreachable!()
        };
        for (j, c) in (lo..=hi).zip(out) {
            color[j] = Some(c);
        }
        let distinct = |color: &[Option<Color>], range: std::ops::Range<usize>| {
            let mut cs: Vec<Color> = color[range].iter().flatten().copied().collect();
            cs.sort_unstable();
            cs.dedup();
            cs.len()
        };
        let count = distinct(&color, lo..hi + 1);
        let last = color[hi];
        match (lo..hi).find(|&j| color[j] == last) {
            Some(partner) if count > budget => {
                let spare = (lo..hi).find(|&j| j != partner).expect("window has three terms");
                color[spare] = None;
                terms.swap(spare, hi);
                term_weights.swap(spare, hi);
                color.swap(spare, hi);
            }
            _ => color[hi] = None,
        }
        let window_colors = distinct(&color, lo..hi);
        s.check(
            "window-color-budget",
            window_colors <= budget,
            format!("class {i}, window {}..={}: {window_colors} colors, budget {budget}", lo + 1, hi + 1),
        )?;
        let prefix_colors = distinct(&color, 0..hi);
        s.check(
            "prefix-color-budget",
            prefix_colors <= profile.landmarks[r + 1],
            format!("class {i}: {prefix_colors} colors before position {}", hi + 1),
        )?;
    }

    let split = profile.positions[ell - 1] - 1;
    let reduced_count = profile.landmarks[ell - 1];
    let remainder_count = terms.len() - split - 1;
    s.check(
        "remainder-count",
        remainder_count + reduced_count == floor_weight,
        format!("class {i}: t_i = {remainder_count}, q_i = {reduced_count}, p_i = {floor_weight}"),
    )?;
    for j in 0..split {
        let c = color[j];
        s.check("prefix-colored", c.is_some(), format!("class {i}, term {}", j + 1))?;
        s.paint(&terms[j], c.unwrap());
    }
    let mut reduced: Vec<usize> = terms[..split].concat();
    reduced.sort_unstable();
    let reduced_weight = s.weight(&reduced);
    s.check(
        "reduced-weight",
        reduced_weight >= reduced_count * k,
        format!("class {i}: w(P_i') = {reduced_weight}, q_i k = {}", reduced_count * k),
    )?;
    let reduced_colors = s.distinct_on(&reduced);
    s.check(
        "reduced-color-budget",
        reduced_colors <= reduced_count,
        format!("class {i}: {reduced_colors} colors, q_i = {reduced_count}"),
    )?;
    let remainder_parts: Vec<Vec<usize>> = terms[split..].to_vec();
    for part in &remainder_parts {
        s.check("remainder-part-weight", s.weight(part) < k, format!("class {i}: part {part:?}"))?;
    }
    let excess = (weight - reduced_weight) as i64 - (remainder_count * k) as i64;

    Ok(ClassRecord {
        index: i,
        open: members,
        precolored: s.precolored_in_class[i],
        weight,
        floor_weight,
        sequence,
        profile,
        reduced,
        reduced_count,
        remainder_count,
        remainder_parts,
        excess,
    })
}
