//! Vertex connectivity via unit-capacity flow on the vertex-split digraph,
//! and deterministic cutset search.

use std::collections::VecDeque;

use crate::graph::{Graph, VertexSet};

/// Residual network for internally-vertex-disjoint s-t paths.
struct SplitNetwork {
    head: Vec<usize>,
    cap: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

impl SplitNetwork {
    const INF: u32 = u32::MAX / 2;

    fn new(g: &Graph, s: usize, t: usize) -> Self {
        let mut net = SplitNetwork {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); 2 * g.n()],
        };
        for v in g.vertices() {
            let c = if v == s || v == t { Self::INF } else { 1 };
            net.arc(2 * v, 2 * v + 1, c);
        }
        for (u, v) in g.edges() {
            net.arc(2 * u + 1, 2 * v, Self::INF);
            net.arc(2 * v + 1, 2 * u, Self::INF);
        }
        net
    }

    fn arc(&mut self, from: usize, to: usize, c: u32) {
        self.adj[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(c);
        self.adj[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    fn augment(&mut self, src: usize, sink: usize) -> bool {
        let mut via = vec![usize::MAX; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[src] = true;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    via[v] = e;
                    if v == sink {
                        let mut x = sink;
                        while x != src {
                            let e = via[x];
                            self.cap[e] -= 1;
                            self.cap[e ^ 1] += 1;
                            x = self.head[e ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(v);
                }
            }
        }
        false
    }
}

/// Number of internally vertex-disjoint paths between non-adjacent `s` and
/// `t`, counted up to `cap`.
pub fn disjoint_paths(g: &Graph, s: usize, t: usize, cap: usize) -> usize {
    debug_assert!(s != t && !g.has_edge(s, t));
    let mut net = SplitNetwork::new(g, s, t);
    let mut found = 0;
    while found < cap && net.augment(2 * s + 1, 2 * t) {
        found += 1;
    }
    found
}

/// True iff `g` has more than `kappa` vertices and no cutset of fewer than
/// `kappa` vertices. Complete graphs have no non-adjacent pair, so they fall
/// out of the vertex-count condition alone.
pub fn vertex_connectivity_at_least(g: &Graph, kappa: usize) -> bool {
    if g.n() <= kappa {
        return false;
    }
    if kappa == 0 {
        return true;
    }
    if (0..g.n()).any(|v| g.degree(v) < kappa) {
        return false;
    }
    for s in g.vertices() {
        for t in s + 1..g.n() {
            if !g.has_edge(s, t) && disjoint_paths(g, s, t, kappa) < kappa {
                return false;
            }
        }
    }
    true
}

/// Exact vertex connectivity (`n - 1` for complete graphs, `0` if disconnected).
pub fn vertex_connectivity(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    let mut best = g.n() - 1;
    for s in g.vertices() {
        for t in s + 1..g.n() {
            if !g.has_edge(s, t) {
                best = best.min(disjoint_paths(g, s, t, best));
            }
        }
    }
    best
}

/// A separation `(X, A, B)`: deleting `X` leaves `A` and `B` with no edges
/// between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub cutset: VertexSet,
    pub left: VertexSet,
    pub right: VertexSet,
}

/// Finds the lexicographically least cutset of at most `max_size` vertices
/// (comparing sorted vertex lists, so `∅` comes first). `left` is the
/// component of `g - X` containing its least vertex; `right` is the rest.
pub fn find_cutset(g: &Graph, max_size: usize) -> Option<Separation> {
    if g.is_connected() && vertex_connectivity_at_least(g, max_size + 1) {
        return None;
    }
    let mut chosen = Vec::new();
    search_cutset(g, max_size, 0, &mut chosen)
}

fn search_cutset(
    g: &Graph,
    max_size: usize,
    from: usize,
    chosen: &mut Vec<usize>,
) -> Option<Separation> {
    let comps = g.components_without(chosen);
    if comps.len() >= 2 {
        let left = VertexSet::from(comps[0].clone());
        let right: VertexSet = comps[1..].iter().flatten().copied().collect();
        return Some(Separation {
            cutset: VertexSet::from(chosen.clone()),
            left,
            right,
        });
    }
    if chosen.len() == max_size {
        return None;
    }
    for v in from..g.n() {
        chosen.push(v);
        let found = search_cutset(g, max_size, v + 1, chosen);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, star};

    #[test]
    fn complete_graph_connectivity_is_n_minus_one() {
        assert!(vertex_connectivity_at_least(&complete(5), 4));
        assert!(!vertex_connectivity_at_least(&complete(5), 5));
        assert_eq!(vertex_connectivity(&complete(5)), 4);
    }

    #[test]
    fn star_center_is_a_cut_vertex() {
        assert!(!vertex_connectivity_at_least(&star(4), 2));
        assert!(vertex_connectivity_at_least(&star(4), 1));
    }

    #[test]
    fn c5_is_exactly_two_connected() {
        assert!(vertex_connectivity_at_least(&cycle(5), 2));
        assert!(!vertex_connectivity_at_least(&cycle(5), 3));
    }

    #[test]
    fn cutset_of_star() {
        let sep = find_cutset(&star(4), 1).unwrap();
        assert_eq!(sep.cutset, VertexSet::from([0]));
        assert_eq!(sep.left, VertexSet::from([1]));
        assert_eq!(sep.right, VertexSet::from([2, 3]));
    }

    #[test]
    fn k4_has_no_small_cutset() {
        assert_eq!(find_cutset(&complete(4), 2), None);
    }

    #[test]
    fn disconnected_graph_has_empty_cutset() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let sep = find_cutset(&g, 0).unwrap();
        assert!(sep.cutset.is_empty());
        assert_eq!(sep.left, VertexSet::from([0, 1, 2]));
        assert_eq!(sep.right, VertexSet::from([3, 4, 5]));
    }

    #[test]
    fn lexicographic_choice_prefers_low_vertices() {
        // path 0-1-2-3: {1} and {2} are both cut vertices
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(find_cutset(&g, 1).unwrap().cutset, VertexSet::from([1]));
    }
}
