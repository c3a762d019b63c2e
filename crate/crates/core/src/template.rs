//! Templates `(S, c, F)`: a proper precoloring of `S` plus forbidden color
//! sets on the uncolored vertices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, ColorSet};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TemplateError {
    #[error("template covers {template} vertices but the graph has {graph}")]
    LengthMismatch { template: usize, graph: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("color {color} at vertex {vertex} is outside 1..={size}")]
    ColorOutOfRange { vertex: usize, color: Color, size: u32 },
    #[error("adjacent precolored vertices {u} and {v} share color {color}")]
    ImproperPrecoloring { u: usize, v: usize, color: Color },
    #[error("precolored vertex {0} also has forbidden colors")]
    ForbiddenOnPrecolored(usize),
    #[error("vertex {0} listed twice")]
    Duplicate(usize),
    #[error("{precolored} precolored vertices but {colors} colors given")]
    ParallelMismatch { precolored: usize, colors: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Template {
    precolor: Vec<Option<Color>>,
    forbidden: Vec<Vec<Color>>,
}

impl Template {
    /// No precolored vertices, nothing forbidden.
    pub fn empty(n: usize) -> Self {
        Template {
            precolor: vec![None; n],
            forbidden: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.precolor.len()
    }

    pub fn with_precolor(mut self, v: usize, c: Color) -> Self {
        self.set_precolor(v, c);
        self
    }

    pub fn with_forbidden<I: IntoIterator<Item = Color>>(mut self, v: usize, colors: I) -> Self {
        self.set_forbidden(v, colors);
        self
    }

    pub fn set_precolor(&mut self, v: usize, c: Color) {
        self.precolor[v] = Some(c);
        self.forbidden[v].clear();
    }

    pub fn set_forbidden<I: IntoIterator<Item = Color>>(&mut self, v: usize, colors: I) {
        let mut f: Vec<Color> = colors.into_iter().collect();
        f.sort_unstable();
        f.dedup();
        self.forbidden[v] = f;
    }

    pub fn uncolor(&mut self, v: usize) {
        self.precolor[v] = None;
    }

    #[inline]
    pub fn color_of(&self, v: usize) -> Option<Color> {
        self.precolor[v]
    }

    #[inline]
    pub fn is_precolored(&self, v: usize) -> bool {
        self.precolor[v].is_some()
    }

    /// `F(v)`; empty for precolored vertices.
    #[inline]
    pub fn forbidden(&self, v: usize) -> &[Color] {
        &self.forbidden[v]
    }

    pub fn precolored(&self) -> VertexSet {
        (0..self.n()).filter(|&v| self.is_precolored(v)).collect()
    }

    pub fn precolored_count(&self) -> usize {
        self.precolor.iter().filter(|c| c.is_some()).count()
    }

    /// `c(S)`, sorted.
    pub fn used_colors(&self) -> Vec<Color> {
        let mut cs: Vec<Color> = self.precolor.iter().flatten().copied().collect();
        cs.sort_unstable();
        cs.dedup();
        cs
    }

    pub fn is_empty(&self) -> bool {
        self.precolor.iter().all(Option::is_none) && self.forbidden.iter().all(Vec::is_empty)
    }

    /// Total number of forbidden colors over uncolored vertices.
    pub fn forbidden_total(&self) -> usize {
        self.forbidden.iter().map(Vec::len).sum()
    }

    pub fn max_forbidden(&self) -> usize {
        self.forbidden.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `k|S| + Σ_{v∉S} |F(v)|`.
    pub fn k_cost(&self, k: usize) -> usize {
        k * self.precolored_count() + self.forbidden_total()
    }

    /// Checks the template against a graph and color set: matching vertex
    /// count, colors in range, proper precoloring, `F` only on uncolored
    /// vertices.
    pub fn validate(&self, g: &Graph, colors: ColorSet) -> Result<(), TemplateError> {
        if self.n() != g.n() {
            return Err(TemplateError::LengthMismatch {
                template: self.n(),
                graph: g.n(),
            });
        }
        for v in 0..self.n() {
            if let Some(c) = self.precolor[v] {
                if !colors.contains(c) {
                    return Err(TemplateError::ColorOutOfRange {
                        vertex: v,
                        color: c,
                        size: colors.size(),
                    });
                }
                if !self.forbidden[v].is_empty() {
                    return Err(TemplateError::ForbiddenOnPrecolored(v));
                }
                for &u in g.neighbors(v) {
                    if u > v && self.precolor[u] == Some(c) {
                        return Err(TemplateError::ImproperPrecoloring { u: v, v: u, color: c });
                    }
                }
            }
            if let Some(&c) = self.forbidden[v].iter().find(|&&c| !colors.contains(c)) {
                return Err(TemplateError::ColorOutOfRange {
                    vertex: v,
                    color: c,
                    size: colors.size(),
                });
            }
        }
        Ok(())
    }

    /// `T_A` on `G[A]`, with `A` given as a sorted vertex set; vertex `i` of
    /// the result is `A[i]`.
    pub fn restrict(&self, set: &VertexSet) -> Template {
        Template {
            precolor: set.iter().map(|v| self.precolor[v]).collect(),
            forbidden: set.iter().map(|v| self.forbidden[v].clone()).collect(),
        }
    }

    /// Template on a supergraph: vertex `i` here becomes `to_original[i]`
    /// there, all other vertices are unconstrained.
    pub fn lift(&self, n: usize, to_original: &[usize]) -> Template {
        let mut t = Template::empty(n);
        for (i, &v) in to_original.iter().enumerate() {
            t.precolor[v] = self.precolor[i];
            t.forbidden[v] = self.forbidden[i].clone();
        }
        t
    }

    pub fn to_json(&self) -> TemplateJson {
        let precolored: Vec<usize> = self.precolored().into_vec();
        TemplateJson {
            colors: precolored.iter().map(|&v| self.precolor[v].unwrap()).collect(),
            precolored,
            forbidden: (0..self.n())
                .filter(|&v| !self.forbidden[v].is_empty())
                .map(|v| (v, self.forbidden[v].clone()))
                .collect(),
        }
    }

    /// Builds and validates a template for `g` from its JSON form.
    pub fn from_json(
        json: &TemplateJson,
        g: &Graph,
        colors: ColorSet,
    ) -> Result<Template, TemplateError> {
        if json.precolored.len() != json.colors.len() {
            return Err(TemplateError::ParallelMismatch {
                precolored: json.precolored.len(),
                colors: json.colors.len(),
            });
        }
        let n = g.n();
        let mut t = Template::empty(n);
        for (&v, &c) in json.precolored.iter().zip(&json.colors) {
            if v >= n {
                return Err(TemplateError::VertexOutOfRange { vertex: v, n });
            }
            if t.precolor[v].is_some() {
                return Err(TemplateError::Duplicate(v));
            }
            t.precolor[v] = Some(c);
        }
        for (&v, fs) in &json.forbidden {
            if v >= n {
                return Err(TemplateError::VertexOutOfRange { vertex: v, n });
            }
            if t.precolor[v].is_some() && !fs.is_empty() {
                return Err(TemplateError::ForbiddenOnPrecolored(v));
            }
            t.set_forbidden(v, fs.iter().copied());
        }
        t.validate(g, colors)?;
        Ok(t)
    }
}

/// Serialized template: `precolored` sorted, `colors` parallel to it,
/// `forbidden` keyed by vertex with sorted color lists (empty lists omitted).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateJson {
    #[serde(default, alias = "S")]
    pub precolored: Vec<usize>,
    #[serde(default, alias = "c")]
    pub colors: Vec<Color>,
    #[serde(default, alias = "F")]
    pub forbidden: BTreeMap<usize, Vec<Color>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, path, star};
    use proptest::prelude::*;

    #[test]
    fn empty_template_costs_nothing() {
        for k in 1..5 {
            assert_eq!(Template::empty(6).k_cost(k), 0);
        }
    }

    #[test]
    fn cost_counts_precolored_and_forbidden() {
        let t = Template::empty(4)
            .with_precolor(1, 1)
            .with_precolor(2, 2)
            .with_precolor(3, 3)
            .with_forbidden(0, [4]);
        assert_eq!(t.k_cost(2), 7);
    }

    #[test]
    fn improper_precoloring_names_the_pair() {
        let t = Template::empty(3).with_precolor(0, 1).with_precolor(1, 1);
        assert_eq!(
            t.validate(&path(3), ColorSet::new(2)),
            Err(TemplateError::ImproperPrecoloring { u: 0, v: 1, color: 1 })
        );
    }

    #[test]
    fn out_of_range_colors_rejected() {
        let g = complete(2);
        let t = Template::empty(2).with_forbidden(0, [3]);
        assert!(matches!(
            t.validate(&g, ColorSet::new(2)),
            Err(TemplateError::ColorOutOfRange { vertex: 0, color: 3, .. })
        ));
        assert!(Template::empty(3).validate(&g, ColorSet::new(2)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = Template::empty(4)
            .with_precolor(1, 1)
            .with_precolor(2, 2)
            .with_forbidden(0, [4, 3]);
        let json = serde_json::to_string(&t.to_json()).unwrap();
        assert_eq!(json, r#"{"precolored":[1,2],"colors":[1,2],"forbidden":{"0":[3,4]}}"#);
        let back: TemplateJson = serde_json::from_str(&json).unwrap();
        assert_eq!(Template::from_json(&back, &star(4), ColorSet::new(4)).unwrap(), t);
    }

    #[test]
    fn json_short_keys_and_defaults() {
        let j: TemplateJson = serde_json::from_str("{}").unwrap();
        assert!(Template::from_json(&j, &star(3), ColorSet::new(2)).unwrap().is_empty());
        let j: TemplateJson = serde_json::from_str(r#"{"S":[0],"c":[2],"F":{"1":[1]}}"#).unwrap();
        let t = Template::from_json(&j, &star(3), ColorSet::new(2)).unwrap();
        assert_eq!(t.color_of(0), Some(2));
        assert_eq!(t.forbidden(1), &[1]);
    }

    proptest! {
        #[test]
        fn cost_is_additive_over_disjoint_restrictions(
            n in 1usize..12,
            k in 1usize..4,
            seed in proptest::collection::vec((0u8..4, 0u32..5), 12),
            split in proptest::collection::vec(any::<bool>(), 12),
        ) {
            let mut t = Template::empty(n);
            for v in 0..n {
                let (kind, c) = seed[v];
                match kind {
                    0 => t.set_precolor(v, c + 1),
                    1 | 2 => t.set_forbidden(v, (1..=c).collect::<Vec<_>>()),
                    _ => {}
                }
            }
            let a: VertexSet = (0..n).filter(|&v| split[v]).collect();
            let b: VertexSet = (0..n).filter(|&v| !split[v]).collect();
            prop_assert_eq!(
                t.restrict(&a).k_cost(k) + t.restrict(&b).k_cost(k),
                t.k_cost(k)
            );
        }
    }
}
