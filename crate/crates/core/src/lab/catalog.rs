//! Non-isomorphic graph catalogs: canonical labeling by color refinement
//! with individualization, generation by vertex addition, and graph6 files.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::formats::{parse_graph6_catalog, to_graph6};
use crate::graph::{Graph, GraphError};

/// Largest order the canonical code supports (`n(n-1)/2 ≤ 128`).
pub const MAX_CANONICAL_ORDER: usize = 16;

/// Stable vertex ranks: the color of `v` is the number of vertices in
/// strictly smaller cells, so a cell `[r, r + size)` is named by `r`.
fn refine(g: &Graph, colors: &mut [usize]) {
    let n = g.n();
    let mut cells = distinct(colors);
    loop {
        let mut sig: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sig.sort();
        let mut rank = 0;
        for i in 0..n {
            if i > 0 && (sig[i].0 != sig[i - 1].0 || sig[i].1 != sig[i - 1].1) {
                rank = i;
            }
            colors[sig[i].2] = rank;
        }
        let now = distinct(colors);
        if now == cells {
            return;
        }
        cells = now;
    }
}

fn distinct(colors: &[usize]) -> usize {
    colors.iter().collect::<BTreeSet<_>>().len()
}

fn code_of(g: &Graph, colors: &[usize]) -> u128 {
    let n = g.n();
    let mut inverse = vec![0; n];
    for (v, &c) in colors.iter().enumerate() {
        inverse[c] = v;
    }
    let mut code = 0u128;
    for j in 1..n {
        for i in 0..j {
            code <<= 1;
            if g.has_edge(inverse[i], inverse[j]) {
                code |= 1;
            }
        }
    }
    code
}

fn search(g: &Graph, colors: Vec<usize>, best: &mut Option<(u128, Vec<usize>)>) {
    let n = g.n();
    // first non-singleton cell in rank order
    let mut size = vec![0usize; n];
    for &c in &colors {
        size[c] += 1;
    }
    let Some(cell) = (0..n).find(|&c| size[c] > 1) else {
        let code = code_of(g, &colors);
        if best.as_ref().is_none_or(|(b, _)| code > *b) {
            *best = Some((code, colors));
        }
        return;
    };
    for v in (0..n).filter(|&v| colors[v] == cell) {
        let mut next = colors.clone();
        for u in 0..n {
            if next[u] == cell && u != v {
                next[u] = cell + 1;
            }
        }
        refine(g, &mut next);
        search(g, next, best);
    }
}

/// Canonical relabeling: isomorphic graphs map to equal graphs. Returns the
/// relabeled graph and `order[new] = old`.
pub fn canonical_form(g: &Graph) -> (Graph, Vec<usize>) {
    let n = g.n();
    assert!(n <= MAX_CANONICAL_ORDER, "canonical form supports n ≤ {MAX_CANONICAL_ORDER}");
    if n == 0 {
        return (g.clone(), Vec::new());
    }
    let mut colors = vec![0; n];
    refine(g, &mut colors);
    let mut best = None;
    search(g, colors, &mut best);
    let (_, colors) = best.unwrap();
    let mut order = vec![0; n];
    for (v, &c) in colors.iter().enumerate() {
        order[c] = v;
    }
    (g.permuted(&order), order)
}

pub fn canonical_graph6(g: &Graph) -> String {
    to_graph6(&canonical_form(g).0)
}

/// All graphs on `n` vertices up to isomorphism, in canonical labeling,
/// sorted by graph6 string. Every graph on `n` vertices arises from one on
/// `n - 1` by adding a vertex, so extending each class representative by
/// every neighborhood and deduplicating canonical forms is exhaustive.
pub fn graphs_of_order(n: usize) -> Vec<Graph> {
    let mut layer = vec![Graph::empty(if n == 0 { 0 } else { 1 })];
    for m in 2..=n {
        let found: BTreeSet<String> = layer
            .par_iter()
            .flat_map_iter(|h| {
                (0u32..1 << (m - 1)).map(move |mask| {
                    let edges = h
                        .edges()
                        .chain((0..m - 1).filter(|&u| mask >> u & 1 == 1).map(|u| (u, m - 1)));
                    canonical_graph6(&Graph::from_edges(m, edges).unwrap())
                })
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        layer = found
            .into_iter()
            .map(|s| crate::formats::from_graph6(&s).unwrap())
            .collect();
    }
    layer
}

/// Graphs of order `1..=n_max`, grouped by order.
pub fn catalog(n_max: usize) -> Vec<Graph> {
    (1..=n_max).flat_map(graphs_of_order).collect()
}

pub fn connected_catalog(n_max: usize) -> Vec<Graph> {
    catalog(n_max).into_iter().filter(Graph::is_connected).collect()
}

/// Graphs from graph6 text (one per line), reduced to isomorphism classes
/// and sorted by `(n, canonical graph6)`.
pub fn ingest_graph6_catalog(text: &str) -> Result<Vec<Graph>, GraphError> {
    let mut keyed: Vec<(usize, String)> = parse_graph6_catalog(text)?
        .iter()
        .map(|g| (g.n(), canonical_graph6(g)))
        .collect();
    keyed.sort();
    keyed.dedup();
    Ok(keyed
        .into_iter()
        .map(|(_, s)| crate::formats::from_graph6(&s).unwrap())
        .collect())
}
