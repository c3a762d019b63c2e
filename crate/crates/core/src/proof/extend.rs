use serde::Serialize;

use super::reduction::reduce;
use super::{count_true, pair_sharing_assignment, PipelineTrace, ProofError, Setup};
use crate::coloring::{Color, ColorSet, Coloring};
use crate::graph::Graph;
use crate::sequence::partition_bounded_indices;
use crate::template::Template;

/// How the lightest remainder parts were colored in the last step of
/// [`extend_316k`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColoringBranch {
    /// No class had excess at least `t'`.
    Empty,
    /// `t' ≤ d'`: descending excess order.
    Descending,
    /// `s k ≤ d k + s(t' + d')`: open classes first, then the rest by
    /// descending excess.
    TwoPhase,
    /// Remaining case, after checking `(k - (t'+d'))(t' - d') ≤ 2d(t'+d')`.
    TightDescending,
}

#[derive(Debug, Clone)]
pub struct ExtensionOutcome {
    pub coloring: Coloring,
    pub trace: PipelineTrace,
    pub branch: Option<ColoringBranch>,
}

/// Smallest palette accepted by [`extend_316k`]: `⌈49k/16⌉ - 1`.
pub fn min_palette_316k(k: usize) -> usize {
    (49 * k).div_ceil(16) - 1
}

fn hypothesis(label: &'static str, detail: String) -> ProofError {
    ProofError::Hypothesis { label, detail }
}

/// Respecting coloring when `|C| ≥ 4k - 2` and the partition has at most
/// `|C| - 2k + 1` classes.
///
/// Classes with `p_i ≥ 1` are split into `p_i` parts of weight `< 2k` that
/// get `p` distinct fresh colors; the remaining classes get one color each,
/// heaviest first.
pub fn extend_4k(
    g: &Graph,
    t: &Template,
    partition: &[Vec<usize>],
    k: usize,
    palette: ColorSet,
) -> Result<ExtensionOutcome, ProofError> {
    let mut s = Setup::new(g, t, partition, k, palette)?;
    let size = palette.size() as usize;
    if size + 2 < 4 * k {
        return Err(hypothesis("palette-at-least-4k-2", format!("|C| = {size}, k = {k}")));
    }
    if partition.len() + 2 * k > size + 1 {
        return Err(hypothesis(
            "classes-at-most-palette-minus-2k-plus-1",
            format!("{} classes, |C| = {size}, k = {k}", partition.len()),
        ));
    }

    s.stage("bounded-partition");
    let weights: Vec<usize> = s.open.iter().map(|p| s.weight(p)).collect();
    let floors: Vec<usize> = weights.iter().map(|w| w / k).collect();
    let slack = s.slack();
    let floor_total: usize = floors.iter().sum();
    let total: usize = weights.iter().sum();
    s.check("weight-budget", k * slack > total, format!("kt = {}, Σw = {total}", k * slack))?;
    s.check("floor-budget", floor_total < slack, format!("p = {floor_total}, t = {slack}"))?;

    let precolors = s.used_outside(None);
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for (i, &p) in floors.iter().enumerate() {
        if p == 0 {
            continue;
        }
        let members = s.open[i].clone();
        let values: Vec<usize> = members.iter().map(|&v| s.forbidden[v].len()).collect();
        for idx in partition_bounded_indices(&values, k, p)? {
            let part: Vec<usize> = idx.into_iter().map(|j| members[j]).collect();
            s.check("part-weight", s.weight(&part) < 2 * k, format!("class {i}: {part:?}"))?;
            parts.push(part);
        }
    }
    let lists: Vec<Vec<Color>> = parts.iter().map(|p| s.list(&precolors, p)).collect();
    for (part, list) in parts.iter().zip(&lists) {
        s.check(
            "part-list-size",
            list.len() >= floor_total,
            format!("part {part:?}: {} colors, p = {floor_total}", list.len()),
        )?;
    }
    let mut taken = vec![false; size + 1];
    let colors = s.assign_distinct("bounded-partition", &lists, &mut taken)?;
    for (part, c) in parts.iter().zip(colors) {
        s.paint(part, c);
    }

    s.stage("light-classes");
    let residual = slack - floor_total;
    let used = s.used_outside(None);
    let used_count = count_true(&used);
    s.check(
        "colors-after-partition",
        used_count + residual <= 2 * k,
        format!("{used_count} colors used, t' = {residual}"),
    )?;
    let light: Vec<usize> = (0..s.classes()).filter(|&i| floors[i] == 0).collect();
    let mut heavy: Vec<usize> = light.iter().copied().filter(|&i| weights[i] >= residual).collect();
    heavy.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
    let rest: Vec<usize> = light.iter().copied().filter(|&i| weights[i] < residual).collect();
    let mut order = Vec::new();
    let mut lists = Vec::new();
    for (pos, &i) in heavy.iter().enumerate() {
        let list = s.list(&used, &s.open[i]);
        s.check(
            "heavy-list-bound",
            list.len() > pos,
            format!("class {i} at position {}: {} colors", pos + 1, list.len()),
        )?;
        order.push(i);
        lists.push(list);
    }
    for &i in &rest {
        let list = s.list(&used, &s.open[i]);
        s.check(
            "light-list-bound",
            list.len() >= light.len(),
            format!("class {i}: {} colors, {} light classes", list.len(), light.len()),
        )?;
        order.push(i);
        lists.push(list);
    }
    let mut taken = vec![false; size + 1];
    let colors = s.assign_distinct("light-classes", &lists, &mut taken)?;
    for (&i, c) in order.iter().zip(colors) {
        let members = s.open[i].clone();
        s.paint(&members, c);
    }
    s.snapshot(serde_json::json!({
        "floor_total": floor_total,
        "residual_slack": residual,
        "heavy": heavy,
        "light": light,
    }));

    let coloring = s.finish(g, t)?;
    Ok(ExtensionOutcome { coloring, trace: s.trace, branch: None })
}

/// Respecting coloring when `|C| ≥ ⌈49k/16⌉ - 1` and the partition has at
/// most `|C| - 2k + 2` classes.
///
/// Stages: reduction; absorbing classes whose remainder parts can be colored
/// with `t_i` colors; coloring all but the lightest remainder part of each
/// open class with fresh colors; then one color per lightest part, with the
/// order chosen by the branch conditions.
pub fn extend_316k(
    g: &Graph,
    t: &Template,
    partition: &[Vec<usize>],
    k: usize,
    palette: ColorSet,
) -> Result<ExtensionOutcome, ProofError> {
    let setup = Setup::new(g, t, partition, k, palette)?;
    let size = palette.size() as usize;
    if size < min_palette_316k(k) {
        return Err(hypothesis(
            "palette-at-least-49k/16-1",
            format!("|C| = {size} < {}", min_palette_316k(k)),
        ));
    }
    if partition.len() + 2 * k > size + 2 {
        return Err(hypothesis(
            "classes-at-most-palette-minus-2k-plus-2",
            format!("{} classes, |C| = {size}, k = {k}", partition.len()),
        ));
    }
    let state = reduce(setup)?;
    let classes = state.classes;
    let mut s = state.setup;
    let chi = classes.len();
    let (ki, ci) = (k as i64, size as i64);
    let residual = state.residual_slack as i64;
    let remainder: Vec<i64> = classes.iter().map(|c| c.remainder_count as i64).collect();

    s.stage("augmentation");
    let mut absorbed = vec![false; chi];
    let open_remainder = |absorbed: &[bool]| -> i64 {
        (0..chi).filter(|&i| remainder[i] > 0 && !absorbed[i]).map(|i| remainder[i]).sum()
    };
    let augmentation_bound = |i: usize, s1: i64| {
        let c = &classes[i];
        remainder[i] * (ci - 3 * ki + residual + s1 + c.precolored as i64 + c.reduced_count as i64)
    };
    loop {
        let s1 = open_remainder(&absorbed);
        let Some(i) = (0..chi).find(|&i| {
            remainder[i] > 0 && !absorbed[i] && classes[i].excess < augmentation_bound(i, s1)
        }) else {
            break;
        };
        let c = &classes[i];
        let outside = s.used_outside(Some(i));
        let used = count_true(&outside) as i64;
        let bound = 2 * ki - residual - s1 - c.precolored as i64 - c.reduced_count as i64;
        s.check(
            "outside-colors-before-augmentation",
            used <= bound,
            format!("class {i}: {used} colors outside, bound {bound}"),
        )?;
        let lists: Vec<Vec<Color>> = c.remainder_parts.iter().map(|p| s.list(&outside, p)).collect();
        let Some(out) = pair_sharing_assignment(&lists) else {
            s.check("augmentation-shared-color", false, format!("class {i}: lists {lists:?}"))?;
            unreachable!()
        };
        let mut distinct = out.clone();
        distinct.sort_unstable();
        distinct.dedup();
        s.check(
            "augmentation-color-budget",
            distinct.len() as i64 <= remainder[i],
            format!("class {i}: {} colors for t_i = {}", distinct.len(), remainder[i]),
        )?;
        for (part, col) in c.remainder_parts.iter().zip(out) {
            s.paint(part, col);
        }
        absorbed[i] = true;
    }

    let s1 = open_remainder(&absorbed);
    let zero: Vec<usize> = (0..chi).filter(|&i| remainder[i] == 0).collect();
    let open: Vec<usize> = (0..chi).filter(|&i| remainder[i] > 0 && !absorbed[i]).collect();
    let active: Vec<usize> = (0..chi).filter(|&i| !absorbed[i]).collect();
    for &i in &active {
        let c = &classes[i];
        let used = count_true(&s.used_outside(Some(i))) as i64;
        let bound = 2 * ki - residual - s1 - c.precolored as i64 - c.reduced_count as i64;
        s.check(
            "outside-colors-after-augmentation",
            used <= bound,
            format!("class {i}: {used} colors outside, bound {bound}"),
        )?;
        s.check(
            "nonnegative-excess-on-open-classes",
            c.excess >= 0,
            format!("class {i}: x = {}", c.excess),
        )?;
        s.check(
            "augmentation-fixpoint",
            c.excess >= augmentation_bound(i, s1),
            format!("class {i}: x = {}, bound {}", c.excess, augmentation_bound(i, s1)),
        )?;
    }
    s.snapshot(serde_json::json!({
        "zero_remainder": zero,
        "open": open,
        "absorbed": (0..chi).filter(|&i| absorbed[i]).collect::<Vec<_>>(),
        "open_remainder": s1,
        "absorbed_remainder": (0..chi).filter(|&i| absorbed[i]).map(|i| remainder[i]).sum::<i64>(),
    }));

    s.stage("remainder-parts");
    let lightest: Vec<usize> = classes
        .iter()
        .map(|c| {
            let w: Vec<usize> = c.remainder_parts.iter().map(|p| s.weight(p)).collect();
            (0..w.len()).min_by_key(|&j| (w[j], j)).unwrap()
        })
        .collect();
    let mut items: Vec<Vec<usize>> = Vec::new();
    let mut lists = Vec::new();
    for &i in &open {
        let outside = s.used_outside(Some(i));
        for (j, part) in classes[i].remainder_parts.iter().enumerate() {
            if j == lightest[i] {
                continue;
            }
            let list = s.list(&outside, part);
            s.check(
                "remainder-list-size",
                list.len() as i64 >= s1,
                format!("class {i}, part {}: {} colors, s1 = {s1}", j + 1, list.len()),
            )?;
            items.push(part.clone());
            lists.push(list);
        }
    }
    let mut taken = vec![false; size + 1];
    let colors = s.assign_distinct("remainder-parts", &lists, &mut taken)?;
    for (part, c) in items.iter().zip(colors) {
        s.paint(part, c);
    }
    for &i in &active {
        let c = &classes[i];
        let used = count_true(&s.used_outside(Some(i))) as i64;
        let bound = 2 * ki - residual - c.precolored as i64 - c.floor_weight as i64;
        s.check(
            "outside-colors-before-final",
            used <= bound,
            format!("class {i}: {used} colors outside, bound {bound}"),
        )?;
    }

    s.stage("lightest-parts");
    let final_lists: Vec<Vec<Color>> = (0..chi)
        .map(|i| {
            if absorbed[i] {
                Vec::new()
            } else {
                let outside = s.used_outside(Some(i));
                s.list(&outside, &classes[i].remainder_parts[lightest[i]])
            }
        })
        .collect();
    let mut chosen: Vec<usize> = active.clone();
    let mut spare = None;
    if active.len() + 2 * k > size + 1 {
        s.check(
            "no-absorbed-classes-when-tight",
            active.len() == chi,
            format!("{} active of {chi}", active.len()),
        )?;
        spare = zero.iter().copied().find(|&i| final_lists[i].len() >= active.len());
        s.check("spare-class-exists", spare.is_some(), format!("active = {}", active.len()))?;
        chosen.retain(|&i| Some(i) != spare);
    }
    let heavy: Vec<usize> = chosen.iter().copied().filter(|&i| classes[i].excess >= residual).collect();
    s.check(
        "heavy-contains-open",
        open.iter().all(|i| heavy.contains(i)),
        format!("open {open:?}, heavy {heavy:?}"),
    )?;

    let margin = ci - 3 * ki + 1;
    let shifted = margin + s1 - 1;
    let shift = s1 - 1;
    let by_excess = |set: &[usize]| {
        let mut v = set.to_vec();
        v.sort_by(|&a, &b| classes[b].excess.cmp(&classes[a].excess).then(a.cmp(&b)));
        v
    };
    let mut order: Vec<(usize, usize)> = Vec::new();
    let branch = if heavy.is_empty() {
        ColoringBranch::Empty
    } else if residual <= shifted {
        order.extend(by_excess(&heavy).into_iter().enumerate().map(|(p, i)| (i, p + 1)));
        ColoringBranch::Descending
    } else if shift * ki <= margin * ki + shift * (residual + shifted) {
        order.extend(open.iter().map(|&i| (i, open.len())));
        let rest: Vec<usize> = heavy.iter().copied().filter(|i| !open.contains(i)).collect();
        order.extend(by_excess(&rest).into_iter().enumerate().map(|(p, i)| (i, p + 1 + open.len())));
        ColoringBranch::TwoPhase
    } else {
        let lhs = (ki - (residual + shifted)) * (residual - shifted);
        let rhs = 2 * margin * (residual + shifted);
        s.check("final-branch-inequality", lhs <= rhs, format!("{lhs} > {rhs}"))?;
        order.extend(by_excess(&heavy).into_iter().enumerate().map(|(p, i)| (i, p + 1)));
        ColoringBranch::TightDescending
    };
    for &(i, need) in &order {
        s.check(
            "final-list-bound",
            final_lists[i].len() >= need,
            format!("class {i}: {} colors, need {need}", final_lists[i].len()),
        )?;
    }
    for &i in chosen.iter().filter(|i| !heavy.contains(i)) {
        s.check(
            "closing-list-bound",
            final_lists[i].len() >= chosen.len(),
            format!("class {i}: {} colors, |J| = {}", final_lists[i].len(), chosen.len()),
        )?;
        order.push((i, chosen.len()));
    }
    if let Some(i) = spare {
        order.push((i, active.len()));
    }
    s.snapshot(serde_json::json!({
        "branch": branch,
        "palette_margin": margin,
        "shifted_margin": shifted,
        "shift": shift,
        "residual_slack": residual,
        "open_remainder": s1,
        "heavy": heavy,
        "chosen": chosen,
        "spare": spare,
    }));
    let lists: Vec<Vec<Color>> = order.iter().map(|&(i, _)| final_lists[i].clone()).collect();
    let mut taken = vec![false; size + 1];
    let colors = s.assign_distinct("lightest-parts", &lists, &mut taken)?;
    for (&(i, _), c) in order.iter().zip(colors) {
        s.paint(&classes[i].remainder_parts[lightest[i]], c);
    }

    let coloring = s.finish(g, t)?;
    Ok(ExtensionOutcome { coloring, trace: s.trace, branch: Some(branch) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::coloring::{check_respects, optimal_coloring};
    use crate::generators::{complete, cycle, path};

    fn classes_of(g: &Graph) -> Vec<Vec<usize>> {
        optimal_coloring(g, &Budget::default()).unwrap().1.classes()
    }

    fn c5_template() -> Template {
        Template::empty(5).with_precolor(0, 1).with_forbidden(1, [2])
    }

    #[test]
    fn palette_thresholds() {
        assert_eq!(min_palette_316k(1), 3);
        assert_eq!(min_palette_316k(2), 6);
        assert_eq!(min_palette_316k(3), 9);
        assert_eq!(min_palette_316k(16), 48);
    }

    #[test]
    fn c5_extends_both_ways() {
        let g = cycle(5);
        let p = classes_of(&g);
        let t = c5_template();
        for out in [
            extend_4k(&g, &t, &p, 2, ColorSet::new(6)).unwrap(),
            extend_316k(&g, &t, &p, 2, ColorSet::new(6)).unwrap(),
        ] {
            assert_eq!(out.coloring.get(0), 1);
            assert_ne!(out.coloring.get(1), 2);
            assert!(check_respects(&g, &t, &out.coloring, ColorSet::new(6)).is_ok());
            assert!(out.trace.discrepancies.is_empty());
        }
    }

    #[test]
    fn empty_template_gives_proper_coloring() {
        let g = complete(4);
        let p = classes_of(&g);
        let out = extend_316k(&g, &Template::empty(4), &p, 1, ColorSet::new(4)).unwrap();
        assert_eq!(out.coloring.distinct_colors(), 4);
        let g = path(4);
        let out = extend_4k(&g, &Template::empty(4), &classes_of(&g), 1, ColorSet::new(3)).unwrap();
        assert!(check_respects(&g, &Template::empty(4), &out.coloring, ColorSet::new(3)).is_ok());
        // two classes need |C| ≥ 2 + 2k - 1
        assert!(extend_4k(&g, &Template::empty(4), &classes_of(&g), 1, ColorSet::new(2)).is_err());
    }

    #[test]
    fn star_like_obstruction_is_rejected_as_input() {
        // stable set of 3 precolored vertices joined to K3: |C| = 5 < 6 for k = 2
        let mut edges = vec![(3, 4), (3, 5), (4, 5)];
        for s in 0..3 {
            for kv in 3..6 {
                edges.push((s, kv));
            }
        }
        let g = Graph::from_edges(6, edges).unwrap();
        let t = Template::empty(6).with_precolor(0, 1).with_precolor(1, 2).with_precolor(2, 3);
        let err = extend_316k(&g, &t, &classes_of(&g), 2, ColorSet::new(5)).unwrap_err();
        assert!(err.is_input_error());
        assert!(matches!(err, ProofError::Hypothesis { label: "palette-at-least-49k/16-1", .. }));
    }

    #[test]
    fn too_many_classes_rejected() {
        let g = complete(4);
        let err = extend_4k(&g, &Template::empty(4), &classes_of(&g), 1, ColorSet::new(3)).unwrap_err();
        assert!(matches!(err, ProofError::Hypothesis { .. }));
    }

    #[test]
    fn partition_must_be_stable_and_cover() {
        let g = path(3);
        let t = Template::empty(3);
        assert!(matches!(
            extend_4k(&g, &t, &[vec![0, 1], vec![2]], 1, ColorSet::new(3)),
            Err(ProofError::PartitionNotStable { .. })
        ));
        assert!(matches!(
            extend_4k(&g, &t, &[vec![0, 2]], 1, ColorSet::new(3)),
            Err(ProofError::PartitionCover(1))
        ));
    }

    /// k = 16, |C| = 48: 21 precolored vertices and five classes of two
    /// vertices with 14 forbidden colors each, so t' = 6, s1 = 5, d = 1.
    fn tight_instance(seed: u64) -> (Graph, Template, Vec<Vec<usize>>) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = 31;
        let g = Graph::empty(n);
        let mut t = Template::empty(n);
        let mut palette: Vec<Color> = (1..=48).collect();
        palette.shuffle(&mut rng);
        for v in 0..21 {
            t.set_precolor(v, palette[v]);
        }
        for v in 21..31 {
            palette.shuffle(&mut rng);
            t.set_forbidden(v, palette[..14].iter().copied());
        }
        let mut partition: Vec<Vec<usize>> = (0..13).map(|i| vec![i]).collect();
        partition[12].extend(13..21);
        for i in 0..5 {
            partition.push(vec![21 + 2 * i, 22 + 2 * i]);
        }
        partition.shuffle(&mut rng);
        (g, t, partition)
    }

    #[test]
    fn tight_branch_is_reached() {
        for seed in 0..20 {
            let (g, t, p) = tight_instance(seed);
            assert_eq!(t.k_cost(16), 21 * 16 + 140);
            let out = extend_316k(&g, &t, &p, 16, ColorSet::new(48)).unwrap();
            assert_eq!(out.branch, Some(ColoringBranch::TightDescending));
            assert!(out.trace.discrepancies.is_empty());
        }
    }

    #[test]
    fn trace_serializes() {
        let g = cycle(5);
        let out = extend_316k(&g, &c5_template(), &classes_of(&g), 2, ColorSet::new(6)).unwrap();
        let json = out.trace.to_json();
        assert!(json["stages"].as_array().unwrap().len() >= 5);
        assert!(out.trace.check_count() > 0);
    }
}
