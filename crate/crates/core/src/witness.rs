//! Inextensibility witnesses: verification, reduction to a good template,
//! and exhaustive search.

use thiserror::Error;

use crate::budget::{Budget, BudgetExhausted, BudgetKind};
use crate::coloring::{find_respecting_coloring, Color, ColorSet, SolveError};
use crate::graph::Graph;
use crate::template::Template;

/// A template certified to witness inextensibility: cost below `2k²`, at most
/// `k` forbidden colors per vertex, and no respecting coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub template: Template,
    pub k: usize,
    pub colors: ColorSet,
    pub cost: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("need at least {need} colors, have {have}")]
    PaletteTooSmall { have: u32, need: u32 },
    #[error("template is not a witness candidate: cost {cost} (limit {limit}), max |F(v)| {max_forbidden} (limit {k})")]
    NotACandidate { cost: usize, limit: usize, max_forbidden: usize, k: usize },
    #[error("no free color for vertex {0} while moving it into the precolored set")]
    NoFreeColor(usize),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

impl From<BudgetExhausted> for WitnessError {
    fn from(e: BudgetExhausted) -> Self {
        WitnessError::Solve(SolveError::Budget(e))
    }
}

/// Cost ceiling `2k²` (exclusive).
pub fn cost_limit(k: usize) -> usize {
    2 * k * k
}

/// True iff the template meets the cost and per-vertex bounds.
pub fn is_candidate(t: &Template, k: usize) -> bool {
    t.k_cost(k) < cost_limit(k) && t.max_forbidden() <= k
}

/// True iff `t` is a good template shape: a candidate with `|F(v)| < k`.
pub fn is_good_shape(t: &Template, k: usize) -> bool {
    t.k_cost(k) < cost_limit(k) && t.max_forbidden() < k
}

/// All three witness conditions. Budget exhaustion is an error, never `false`.
pub fn verify_witness(
    g: &Graph,
    t: &Template,
    k: usize,
    colors: ColorSet,
    budget: &Budget,
) -> Result<bool, SolveError> {
    t.validate(g, colors)?;
    if !is_candidate(t, k) {
        return Ok(false);
    }
    Ok(find_respecting_coloring(g, t, colors, budget)?.is_none())
}

impl Witness {
    /// Checks all witness conditions; `None` if they do not hold.
    pub fn certify(
        g: &Graph,
        template: Template,
        k: usize,
        colors: ColorSet,
        budget: &Budget,
    ) -> Result<Option<Witness>, SolveError> {
        if !verify_witness(g, &template, k, colors, budget)? {
            return Ok(None);
        }
        let cost = template.k_cost(k);
        Ok(Some(Witness { template, k, colors, cost }))
    }

    /// The empty template with `|C| = χ(g) - 1` colors.
    pub fn empty_for(g: &Graph, k: usize, chi: usize) -> Witness {
        Witness {
            template: Template::empty(g.n()),
            k,
            colors: ColorSet::new(chi.saturating_sub(1) as u32),
            cost: 0,
        }
    }

    pub fn is_good(&self) -> bool {
        self.template.max_forbidden() < self.k
    }
}

/// Makes a witness good: while some uncolored `v` has exactly `k` forbidden
/// colors, precolor it with the least color outside `c(S) ∪ F(v)`. Each move
/// keeps the cost unchanged and can only remove respecting colorings, so the
/// result is still a witness.
pub fn goodify(g: &Graph, w: &Witness) -> Result<Witness, WitnessError> {
    let k = w.k;
    let need = (3 * k - 1) as u32;
    if w.colors.size() < need {
        return Err(WitnessError::PaletteTooSmall { have: w.colors.size(), need });
    }
    let mut t = w.template.clone();
    t.validate(g, w.colors).map_err(SolveError::from)?;
    if !is_candidate(&t, k) {
        return Err(WitnessError::NotACandidate {
            cost: t.k_cost(k),
            limit: cost_limit(k),
            max_forbidden: t.max_forbidden(),
            k,
        });
    }
    let cost = t.k_cost(k);
    while let Some(v) = (0..g.n()).find(|&v| !t.is_precolored(v) && t.forbidden(v).len() == k) {
        let used = t.used_colors();
        let c = w
            .colors
            .colors()
            .find(|c| !used.contains(c) && !t.forbidden(v).contains(c))
            .ok_or(WitnessError::NoFreeColor(v))?;
        t.set_precolor(v, c);
        assert_eq!(t.k_cost(k), cost, "moving a saturated vertex must preserve cost");
    }
    Ok(Witness { template: t, k, colors: w.colors, cost })
}

/// Exhaustive witness search, up to color relabeling.
///
/// Order: `|S|` ascending, `S` lexicographic, precolorings of `G[S]` as
/// restricted growth strings, then forbidden sets vertex by vertex. Only
/// forbidden assignments that are maximal under the cost and per-vertex caps
/// are tried (enlarging `F` never creates a respecting coloring), and colors
/// not yet mentioned are introduced in increasing order. The first witness
/// found is returned.
pub fn enumerate_witness(
    g: &Graph,
    k: usize,
    colors: ColorSet,
    budget: &Budget,
) -> Result<Option<Witness>, SolveError> {
    let mut e = Enumerator {
        g,
        k,
        colors,
        budget,
        checked: 0,
        template: Template::empty(g.n()),
    };
    let max_s = (2 * k - 1).min(g.n());
    for size in 0..=max_s {
        let mut chosen = Vec::with_capacity(size);
        if let Some(w) = e.subsets(size, 0, &mut chosen)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

struct Enumerator<'a> {
    g: &'a Graph,
    k: usize,
    colors: ColorSet,
    budget: &'a Budget,
    checked: u64,
    template: Template,
}

type Found = Result<Option<Witness>, SolveError>;

impl Enumerator<'_> {
    fn subsets(&mut self, size: usize, from: usize, chosen: &mut Vec<usize>) -> Found {
        if chosen.len() == size {
            let s = chosen.clone();
            return self.precolorings(&s, 0, 0);
        }
        let need = size - chosen.len();
        for v in from..=self.g.n() - need {
            chosen.push(v);
            let r = self.subsets(size, v + 1, chosen)?;
            chosen.pop();
            if r.is_some() {
                return Ok(r);
            }
        }
        Ok(None)
    }

    fn precolorings(&mut self, s: &[usize], i: usize, max_used: Color) -> Found {
        if i == s.len() {
            return self.forbidden_sets(s, max_used);
        }
        let v = s[i];
        let top = (max_used + 1).min(self.colors.size());
        for c in 1..=top {
            if s[..i].iter().any(|&u| self.g.has_edge(u, v) && self.template.color_of(u) == Some(c)) {
                continue;
            }
            self.template.set_precolor(v, c);
            let r = self.precolorings(s, i + 1, max_used.max(c))?;
            if r.is_some() {
                return Ok(r);
            }
        }
        self.template.uncolor(v);
        Ok(None)
    }

    fn forbidden_sets(&mut self, s: &[usize], mentioned: Color) -> Found {
        let uncolored: Vec<usize> = (0..self.g.n()).filter(|v| !s.contains(v)).collect();
        let remaining = cost_limit(self.k) - 1 - self.k * s.len();
        let cap = self.k.min(self.colors.size() as usize);
        let total = remaining.min(cap * uncolored.len());
        let r = self.distribute(&uncolored, 0, total, cap, mentioned);
        for &v in &uncolored {
            self.template.set_forbidden(v, []);
        }
        r
    }

    /// Assigns `F` to `uncolored[i..]` with exactly `left` colors in total.
    /// Colors `> mentioned` have not appeared yet and are interchangeable.
    fn distribute(
        &mut self,
        uncolored: &[usize],
        i: usize,
        left: usize,
        cap: usize,
        mentioned: Color,
    ) -> Found {
        if i == uncolored.len() {
            debug_assert_eq!(left, 0);
            return self.check();
        }
        let rest = uncolored.len() - i - 1;
        let lo = left.saturating_sub(cap * rest);
        let hi = left.min(cap);
        for size in (lo..=hi).rev() {
            // `old` colors come from 1..=mentioned, the rest are the next
            // fresh colors in order.
            for fresh in 0..=size {
                let old = size - fresh;
                if mentioned + fresh as Color > self.colors.size() || old > mentioned as usize {
                    continue;
                }
                let mut pick = Vec::with_capacity(old);
                let r = self.old_subsets(uncolored, i, left - size, cap, mentioned, fresh, old, 1, &mut pick)?;
                if r.is_some() {
                    return Ok(r);
                }
            }
        }
        Ok(None)
    }

    #[allow(clippy::too_many_arguments)]
    fn old_subsets(
        &mut self,
        uncolored: &[usize],
        i: usize,
        left: usize,
        cap: usize,
        mentioned: Color,
        fresh: usize,
        old: usize,
        from: Color,
        pick: &mut Vec<Color>,
    ) -> Found {
        if pick.len() == old {
            let v = uncolored[i];
            let set = pick.iter().copied().chain((1..=fresh as Color).map(|j| mentioned + j));
            self.template.set_forbidden(v, set);
            return self.distribute(uncolored, i + 1, left, cap, mentioned + fresh as Color);
        }
        let need = (old - pick.len()) as Color;
        for c in from..=mentioned + 1 - need {
            pick.push(c);
            let r = self.old_subsets(uncolored, i, left, cap, mentioned, fresh, old, c + 1, pick)?;
            pick.pop();
            if r.is_some() {
                return Ok(r);
            }
        }
        Ok(None)
    }

    fn check(&mut self) -> Found {
        self.checked += 1;
        if self.checked > self.budget.templates {
            return Err(BudgetExhausted { what: BudgetKind::Templates, limit: self.budget.templates }.into());
        }
        if find_respecting_coloring(self.g, &self.template, self.colors, self.budget)?.is_none() {
            let template = self.template.clone();
            let cost = template.k_cost(self.k);
            return Ok(Some(Witness { template, k: self.k, colors: self.colors, cost }));
        }
        Ok(None)
    }
}
