//! Exact coloring search: chromatic number, plain `m`-coloring and
//! precoloring extension under a template.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, BudgetExhausted, BudgetKind};
use crate::graph::Graph;
use crate::template::{Template, TemplateError};

/// Colors are `1..=size`.
pub type Color = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorSet(u32);

impl ColorSet {
    pub fn new(size: u32) -> Self {
        ColorSet(size)
    }

    #[inline]
    pub fn size(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn contains(self, c: Color) -> bool {
        (1..=self.0).contains(&c)
    }

    pub fn colors(self) -> impl Iterator<Item = Color> {
        1..=self.0
    }
}

/// Total assignment of colors to vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring(Vec<Color>);

impl Coloring {
    pub fn new(colors: Vec<Color>) -> Self {
        Coloring(colors)
    }

    #[inline]
    pub fn get(&self, v: usize) -> Color {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn distinct_colors(&self) -> usize {
        let mut cs = self.0.clone();
        cs.sort_unstable();
        cs.dedup();
        cs.len()
    }

    /// Vertex classes by color, in color order, empty classes dropped.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let max = self.0.iter().copied().max().unwrap_or(0) as usize;
        let mut out = vec![Vec::new(); max + 1];
        for (v, &c) in self.0.iter().enumerate() {
            out[c as usize].push(v);
        }
        out.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Budget(#[from] BudgetExhausted),
    #[error("malformed template: {0}")]
    Template(#[from] TemplateError),
}

/// Why a coloring fails verification.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("coloring has {got} entries, graph has {want} vertices")]
    Length { got: usize, want: usize },
    #[error("vertex {vertex} has color {color} outside 1..={size}")]
    OutOfRange { vertex: usize, color: Color, size: u32 },
    #[error("edge {u}-{v} is monochromatic ({color})")]
    Monochromatic { u: usize, v: usize, color: Color },
    #[error("precolored vertex {vertex} has {got}, template says {want}")]
    Precolor { vertex: usize, got: Color, want: Color },
    #[error("vertex {vertex} uses forbidden color {color}")]
    Forbidden { vertex: usize, color: Color },
}

/// Plain properness check, written independently of the search.
pub fn check_proper(g: &Graph, f: &Coloring, colors: ColorSet) -> Result<(), Violation> {
    if f.len() != g.n() {
        return Err(Violation::Length { got: f.len(), want: g.n() });
    }
    for v in g.vertices() {
        if !colors.contains(f.get(v)) {
            return Err(Violation::OutOfRange { vertex: v, color: f.get(v), size: colors.size() });
        }
    }
    for (u, v) in g.edges() {
        if f.get(u) == f.get(v) {
            return Err(Violation::Monochromatic { u, v, color: f.get(u) });
        }
    }
    Ok(())
}

/// Properness plus agreement with the template.
pub fn check_respects(
    g: &Graph,
    t: &Template,
    f: &Coloring,
    colors: ColorSet,
) -> Result<(), Violation> {
    check_proper(g, f, colors)?;
    for v in g.vertices() {
        match t.color_of(v) {
            Some(want) if want != f.get(v) => {
                return Err(Violation::Precolor { vertex: v, got: f.get(v), want })
            }
            Some(_) => {}
            None => {
                if t.forbidden(v).contains(&f.get(v)) {
                    return Err(Violation::Forbidden { vertex: v, color: f.get(v) });
                }
            }
        }
    }
    Ok(())
}

/// Backtracking state. `blocked[v * stride + c]` counts the reasons color
/// `c` is unavailable at `v` (colored neighbors plus a forbidden mark);
/// `open[v]` is the number of colors with no reason.
struct Search<'a> {
    g: &'a Graph,
    m: usize,
    stride: usize,
    blocked: Vec<u32>,
    open: Vec<usize>,
    color: Vec<Color>,
    used: Vec<usize>,
    /// Colors that are interchangeable with each other while unused.
    free: Vec<bool>,
    nodes: u64,
    limit: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, m: usize, limit: u64) -> Self {
        let stride = m + 1;
        Search {
            g,
            m,
            stride,
            blocked: vec![0; g.n() * stride],
            open: vec![m; g.n()],
            color: vec![0; g.n()],
            used: vec![0; stride],
            free: vec![true; stride],
            nodes: 0,
            limit,
        }
    }

    fn forbid(&mut self, v: usize, c: Color) {
        let slot = &mut self.blocked[v * self.stride + c as usize];
        if *slot == 0 {
            self.open[v] -= 1;
        }
        *slot += 1;
    }

    /// Colors `v` and updates neighbor domains. Returns false if some
    /// uncolored neighbor is left without options (state is still updated).
    fn assign(&mut self, v: usize, c: Color) -> bool {
        self.color[v] = c;
        self.used[c as usize] += 1;
        let mut ok = true;
        let g = self.g;
        for &u in g.neighbors(v) {
            let slot = &mut self.blocked[u * self.stride + c as usize];
            if *slot == 0 {
                self.open[u] -= 1;
                if self.open[u] == 0 && self.color[u] == 0 {
                    ok = false;
                }
            }
            *slot += 1;
        }
        ok
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = 0;
        self.used[c as usize] -= 1;
        let g = self.g;
        for &u in g.neighbors(v) {
            let slot = &mut self.blocked[u * self.stride + c as usize];
            *slot -= 1;
            if *slot == 0 {
                self.open[u] += 1;
            }
        }
    }

    /// Uncolored vertex with the fewest open colors, ties by vertex index.
    fn pick(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for v in self.g.vertices() {
            if self.color[v] == 0 && best.is_none_or(|b| self.open[v] < self.open[b]) {
                best = Some(v);
                if self.open[v] <= 1 {
                    break;
                }
            }
        }
        best
    }

    fn run(&mut self) -> Result<bool, BudgetExhausted> {
        let Some(v) = self.pick() else {
            return Ok(true);
        };
        if self.open[v] == 0 {
            return Ok(false);
        }
        let mut tried_fresh = false;
        for c in 1..=self.m as Color {
            if self.blocked[v * self.stride + c as usize] != 0 {
                continue;
            }
            if self.free[c as usize] && self.used[c as usize] == 0 {
                if tried_fresh {
                    continue;
                }
                tried_fresh = true;
            }
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(BudgetExhausted { what: BudgetKind::SolverNodes, limit: self.limit });
            }
            let ok = self.assign(v, c);
            if ok && self.run()? {
                return Ok(true);
            }
            self.unassign(v);
        }
        Ok(false)
    }

    fn result(&self) -> Coloring {
        Coloring(self.color.clone())
    }
}

/// Greedily grown clique: from each start vertex add the highest-degree
/// common neighbor (ties by index); keep the largest, earliest start first.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    for s in g.vertices() {
        let mut clique = vec![s];
        let mut cand: Vec<usize> = g.neighbors(s).to_vec();
        while !cand.is_empty() {
            let &next = cand
                .iter()
                .max_by(|&&a, &&b| g.degree(a).cmp(&g.degree(b)).then(b.cmp(&a)))
                .unwrap();
            clique.push(next);
            cand.retain(|&u| u != next && g.has_edge(u, next));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// Proper coloring with colors `1..=|C|` if one exists. One greedy clique is
/// precolored `1, 2, ...` and unused colors are treated as interchangeable.
pub fn find_coloring(
    g: &Graph,
    colors: ColorSet,
    budget: &Budget,
) -> Result<Option<Coloring>, BudgetExhausted> {
    let m = colors.size() as usize;
    if g.n() == 0 {
        return Ok(Some(Coloring(Vec::new())));
    }
    let clique = greedy_clique(g);
    if clique.len() > m {
        return Ok(None);
    }
    let mut search = Search::new(g, m, budget.solver_nodes);
    for (i, &v) in clique.iter().enumerate() {
        search.assign(v, i as Color + 1);
    }
    Ok(search.run()?.then(|| search.result()))
}

/// Proper coloring respecting `t`: precolored vertices keep their colors,
/// uncolored ones avoid `F(v)`. Colors mentioned anywhere in the template are
/// never treated as interchangeable.
pub fn find_respecting_coloring(
    g: &Graph,
    t: &Template,
    colors: ColorSet,
    budget: &Budget,
) -> Result<Option<Coloring>, SolveError> {
    t.validate(g, colors)?;
    let m = colors.size() as usize;
    let mut search = Search::new(g, m, budget.solver_nodes);
    for v in g.vertices() {
        for &c in t.forbidden(v) {
            search.forbid(v, c);
            search.free[c as usize] = false;
        }
    }
    for v in g.vertices() {
        if let Some(c) = t.color_of(v) {
            search.free[c as usize] = false;
            search.assign(v, c);
        }
    }
    if g.vertices().any(|v| search.color[v] == 0 && search.open[v] == 0) {
        return Ok(None);
    }
    Ok(search.run()?.then(|| search.result()))
}

/// DSATUR greedy coloring (no backtracking), colors `1..`.
pub fn dsatur_greedy(g: &Graph) -> Coloring {
    let n = g.n();
    let mut color = vec![0 as Color; n];
    let mut seen: Vec<Vec<bool>> = vec![vec![false; n + 2]; n];
    let mut sat = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == 0)
            .max_by(|&a, &b| {
                sat[a].cmp(&sat[b]).then(g.degree(a).cmp(&g.degree(b))).then(b.cmp(&a))
            })
            .unwrap();
        let c = (1..).find(|&c| !seen[v][c]).unwrap();
        color[v] = c as Color;
        for &u in g.neighbors(v) {
            if !seen[u][c] {
                seen[u][c] = true;
                sat[u] += 1;
            }
        }
    }
    Coloring(color)
}

/// Exact chromatic number with an optimal coloring.
pub fn optimal_coloring(g: &Graph, budget: &Budget) -> Result<(usize, Coloring), BudgetExhausted> {
    if g.n() == 0 {
        return Ok((0, Coloring(Vec::new())));
    }
    let upper = dsatur_greedy(g);
    let hi = upper.distinct_colors();
    let lo = greedy_clique(g).len();
    for m in lo..hi {
        if let Some(f) = find_coloring(g, ColorSet::new(m as u32), budget)? {
            return Ok((m, f));
        }
    }
    Ok((hi, upper))
}

/// Exact `χ(g)`; `0` for the empty graph.
pub fn chromatic_number(g: &Graph, budget: &Budget) -> Result<usize, BudgetExhausted> {
    optimal_coloring(g, budget).map(|(m, _)| m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path, petersen, random_graph, wheel};

    fn b() -> Budget {
        Budget::default()
    }

    /// Independent oracle: try every assignment of `m` colors.
    fn brute_colorable(g: &Graph, m: u32) -> bool {
        let n = g.n();
        if n == 0 {
            return true;
        }
        if m == 0 {
            return false;
        }
        let mut f = vec![1u32; n];
        loop {
            if g.edges().all(|(u, v)| f[u] != f[v]) {
                return true;
            }
            let mut i = 0;
            while i < n && f[i] == m {
                f[i] = 1;
                i += 1;
            }
            if i == n {
                return false;
            }
            f[i] += 1;
        }
    }

    #[test]
    fn small_chromatic_numbers() {
        assert_eq!(chromatic_number(&complete(4), &b()).unwrap(), 4);
        assert_eq!(chromatic_number(&cycle(5), &b()).unwrap(), 3);
        assert_eq!(chromatic_number(&cycle(6), &b()).unwrap(), 2);
        assert_eq!(chromatic_number(&Graph::empty(0), &b()).unwrap(), 0);
        assert_eq!(chromatic_number(&Graph::empty(3), &b()).unwrap(), 1);
        assert_eq!(chromatic_number(&wheel(5), &b()).unwrap(), 4);
    }

    #[test]
    fn petersen_is_three_chromatic() {
        let g = petersen();
        assert!(brute_colorable(&g, 3));
        assert!(!brute_colorable(&g, 2)); // contains C5
        assert_eq!(chromatic_number(&g, &b()).unwrap(), 3);
    }

    #[test]
    fn triangle_colorings() {
        assert_eq!(find_coloring(&complete(3), ColorSet::new(2), &b()).unwrap(), None);
        let f = find_coloring(&complete(3), ColorSet::new(3), &b()).unwrap().unwrap();
        check_proper(&complete(3), &f, ColorSet::new(3)).unwrap();
        let f = find_coloring(&cycle(5), ColorSet::new(3), &b()).unwrap().unwrap();
        check_proper(&cycle(5), &f, ColorSet::new(3)).unwrap();
    }

    #[test]
    fn empty_template_is_plain_coloring() {
        let g = cycle(5);
        let f = find_respecting_coloring(&g, &Template::empty(5), ColorSet::new(3), &b())
            .unwrap()
            .unwrap();
        check_respects(&g, &Template::empty(5), &f, ColorSet::new(3)).unwrap();
    }

    #[test]
    fn forbidden_colors_break_color_symmetry() {
        // With v0 unable to take color 1 the clique trick would be unsound.
        let g = complete(3);
        let t = Template::empty(3).with_forbidden(0, [1]);
        let f = find_respecting_coloring(&g, &t, ColorSet::new(3), &b()).unwrap().unwrap();
        check_respects(&g, &t, &f, ColorSet::new(3)).unwrap();
        let t = t.with_forbidden(1, [1]).with_forbidden(2, [1]);
        assert_eq!(find_respecting_coloring(&g, &t, ColorSet::new(3), &b()).unwrap(), None);
    }

    #[test]
    fn malformed_template_is_an_error() {
        let t = Template::empty(2).with_precolor(0, 1).with_precolor(1, 1);
        assert!(matches!(
            find_respecting_coloring(&complete(2), &t, ColorSet::new(2), &b()),
            Err(SolveError::Template(_))
        ));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let tight = Budget { solver_nodes: 3, ..Budget::default() };
        let r = find_coloring(&petersen(), ColorSet::new(3), &tight);
        assert!(matches!(r, Err(BudgetExhausted { what: BudgetKind::SolverNodes, .. })));
    }

    #[test]
    fn verifier_catches_violations() {
        let g = path(3);
        let t = Template::empty(3).with_precolor(0, 1).with_forbidden(2, [2]);
        let c = ColorSet::new(2);
        assert!(check_respects(&g, &t, &Coloring::new(vec![1, 2, 1]), c).is_ok());
        assert!(matches!(
            check_respects(&g, &t, &Coloring::new(vec![2, 1, 2]), c),
            Err(Violation::Precolor { .. })
        ));
        assert!(matches!(
            check_respects(&g, &t, &Coloring::new(vec![1, 1, 2]), c),
            Err(Violation::Monochromatic { .. })
        ));
        let t = Template::empty(3).with_forbidden(2, [1]);
        assert!(matches!(
            check_respects(&g, &t, &Coloring::new(vec![1, 2, 1]), c),
            Err(Violation::Forbidden { vertex: 2, color: 1 })
        ));
    }

    #[test]
    fn chromatic_number_is_least_colorable_m() {
        for seed in 0..200u64 {
            let n = (seed % 8) as usize;
            let g = random_graph(n, 0.2 + (seed % 7) as f64 / 10.0, seed).unwrap();
            let chi = chromatic_number(&g, &b()).unwrap();
            let least = (0..=n as u32).find(|&m| brute_colorable(&g, m)).unwrap();
            assert_eq!(chi as u32, least, "{g:?}");
            for m in 0..=n as u32 {
                let found = find_coloring(&g, ColorSet::new(m), &b()).unwrap();
                assert_eq!(found.is_some(), m as usize >= chi);
                if let Some(f) = found {
                    check_proper(&g, &f, ColorSet::new(m)).unwrap();
                }
            }
        }
    }
}
