//! Named graph families and the seeded G(n, p) generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("edge probability {0} is outside [0, 1]")]
pub struct ProbabilityError(pub f64);

/// Erdős–Rényi graph G(n, p).
///
/// The stream is ChaCha8 seeded with `seed_from_u64(seed)`. Pairs `(i, j)`
/// with `i < j` are visited in lexicographic order and each consumes one
/// `f64` draw in `[0, 1)`; the edge is present iff the draw is `< p`. The
/// result depends only on `(n, p, seed)`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph, ProbabilityError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ProbabilityError(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::from_edges(n, edges).expect("generated edges are in range"))
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Star on `n` vertices with center `0`.
pub fn star(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (0, i))).unwrap()
}

/// Wheel with `rim` rim vertices `0..rim` and hub `rim`.
pub fn wheel(rim: usize) -> Graph {
    let mut edges: Vec<_> = (0..rim).map(|i| (i, (i + 1) % rim)).collect();
    edges.extend((0..rim).map(|i| (i, rim)));
    Graph::from_edges(rim + 1, edges).unwrap()
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).unwrap()
}

/// Disjoint union, with `b`'s vertices shifted past `a`'s.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let off = a.n();
    Graph::from_edges(
        a.n() + b.n(),
        a.edges().chain(b.edges().map(|(u, v)| (u + off, v + off))),
    )
    .unwrap()
}

/// Adds one vertex adjacent to `attach`.
pub fn with_pendant(g: &Graph, attach: usize) -> Graph {
    Graph::from_edges(g.n() + 1, g.edges().chain([(attach, g.n())])).unwrap()
}
