#![allow(dead_code)]

use highconn::coloring::optimal_coloring;
use highconn::generators::random_graph;
use highconn::{Budget, ColorSet, Graph, Template};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A graph, a good template, a stable partition and a palette.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub template: Template,
    pub partition: Vec<Vec<usize>>,
    pub k: usize,
    pub palette: ColorSet,
}

/// Which palette/class-count regime to draw from.
#[derive(Debug, Clone, Copy)]
pub enum Regime {
    /// `|C| ≥ 4k-2`, at most `|C| - 2k + 1` classes.
    FourK,
    /// `|C| ≥ ⌈49k/16⌉ - 1`, at most `|C| - 2k + 2` classes.
    ThreeSixteenth,
}

pub fn random_instance(seed: u64, regime: Regime) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k: usize = rng.gen_range(1..=3);
    let n: usize = rng.gen_range(1..=12);
    let p = rng.gen_range(0.1..0.9);
    let graph = random_graph(n, p, rng.gen()).unwrap();
    let (chi, coloring) = optimal_coloring(&graph, &Budget::default()).unwrap();
    let (min_palette, extra) = match regime {
        Regime::FourK => (4 * k - 2, 1),
        Regime::ThreeSixteenth => ((49 * k).div_ceil(16) - 1, 2),
    };
    // class bound = |C| - 2k + extra must cover χ
    let need = (chi + 2 * k).saturating_sub(extra);
    let size = min_palette.max(need) + rng.gen_range(0..=2);
    let bound = size + extra - 2 * k;

    let mut partition = coloring.classes();
    let target = rng.gen_range(partition.len()..=bound);
    while partition.len() < target {
        // split a class or add an empty one
        let i = rng.gen_range(0..partition.len());
        if partition[i].len() >= 2 && rng.gen_bool(0.7) {
            partition[i].shuffle(&mut rng);
            let cut = rng.gen_range(1..partition[i].len());
            let tail = partition[i].split_off(cut);
            partition[i].sort_unstable();
            let mut tail = tail;
            tail.sort_unstable();
            partition.push(tail);
        } else {
            partition.push(Vec::new());
        }
    }
    partition.shuffle(&mut rng);

    let template = random_good_template(&graph, k, size as u32, &mut rng);
    Instance { graph, template, partition, k, palette: ColorSet::new(size as u32) }
}

/// Random template with cost `< 2k²`, proper precoloring, `|F(v)| ≤ k-1`.
pub fn random_good_template(g: &Graph, k: usize, size: u32, rng: &mut ChaCha8Rng) -> Template {
    let n = g.n();
    let mut t = Template::empty(n);
    let limit = 2 * k * k;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let precolor_share = rng.gen_range(0.0..0.6);
    for &v in &order {
        let cost = t.k_cost(k);
        if rng.gen_bool(precolor_share) {
            if cost + k >= limit {
                continue;
            }
            let options: Vec<u32> = (1..=size)
                .filter(|&c| g.neighbors(v).iter().all(|&u| t.color_of(u) != Some(c)))
                .collect();
            if let Some(&c) = options.choose(rng) {
                t.set_precolor(v, c);
            }
        } else {
            let room = (limit - 1 - cost).min(k - 1);
            if room == 0 {
                continue;
            }
            let m = rng.gen_range(0..=room);
            let mut colors: Vec<u32> = (1..=size).collect();
            colors.shuffle(rng);
            t.set_forbidden(v, colors.into_iter().take(m));
        }
    }
    t
}

/// Larger `k` on sparse graphs with a random (not necessarily optimal)
/// stable partition and a heavy good template, to reach every branch of the
/// final coloring step.
pub fn deep_instance(seed: u64, regime: Regime) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let k: usize = rng.gen_range(2..=24);
    let (min_palette, extra) = match regime {
        Regime::FourK => (4 * k - 2, 1),
        Regime::ThreeSixteenth => ((49 * k).div_ceil(16) - 1, 2),
    };
    let size = min_palette + rng.gen_range(0..=k / 4);
    let classes = rng.gen_range(1..=size + extra - 2 * k);
    let n: usize = rng.gen_range(classes..=classes + 4 * k);
    // vertex v belongs to class v mod classes; edges only across classes
    let mut partition = vec![Vec::new(); classes];
    for v in 0..n {
        partition[v % classes].push(v);
    }
    let p = rng.gen_range(0.0..0.3);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if u % classes != v % classes && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::from_edges(n, edges).unwrap();
    let template = heavy_good_template(&graph, k, size as u32, &mut rng);
    partition.shuffle(&mut rng);
    Instance { graph, template, partition, k, palette: ColorSet::new(size as u32) }
}

/// Good template spending most of the `2k² - 1` budget.
pub fn heavy_good_template(g: &Graph, k: usize, size: u32, rng: &mut ChaCha8Rng) -> Template {
    let n = g.n();
    let mut t = Template::empty(n);
    let limit = 2 * k * k - 1;
    let precolored = rng.gen_range(0..(2 * k).min(n + 1));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for &v in order.iter().take(precolored) {
        if t.k_cost(k) + k > limit {
            break;
        }
        let options: Vec<u32> = (1..=size)
            .filter(|&c| g.neighbors(v).iter().all(|&u| t.color_of(u) != Some(c)))
            .collect();
        if let Some(&c) = options.choose(rng) {
            t.set_precolor(v, c);
        }
    }
    let style = rng.gen_range(0..3);
    for &v in order.iter().skip(precolored) {
        let room = (limit - t.k_cost(k)).min(k - 1);
        if room == 0 {
            break;
        }
        let m = match style {
            0 => rng.gen_range(0..=room),
            1 => room,
            _ => rng.gen_range(room / 2..=room),
        };
        let mut colors: Vec<u32> = (1..=size).collect();
        colors.shuffle(rng);
        t.set_forbidden(v, colors.into_iter().take(m));
    }
    t
}

/// Edgeless instance with `k = 16`, `|C| = 48` and five two-vertex classes of
/// weight 14 per vertex; its final step needs the tight descending order.
pub fn tight_instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 31;
    let graph = Graph::empty(n);
    let mut t = Template::empty(n);
    let mut palette: Vec<u32> = (1..=48).collect();
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
    Instance { graph, template: t, partition, k: 16, palette: ColorSet::new(48) }
}

/// Respecting coloring by trying all `|C|^n` assignments.
pub fn brute_force_respecting(g: &Graph, t: &Template, colors: u32) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    if colors == 0 {
        return false;
    }
    let mut f = vec![1u32; n];
    loop {
        let ok = (0..n).all(|v| match t.color_of(v) {
            Some(c) => f[v] == c,
            None => !t.forbidden(v).contains(&f[v]),
        }) && g.edges().all(|(u, v)| f[u] != f[v]);
        if ok {
            return true;
        }
        let mut i = 0;
        while i < n && f[i] == colors {
            f[i] = 1;
            i += 1;
        }
        if i == n {
            return false;
        }
        f[i] += 1;
    }
}

/// Random valid template on `g` over `colors` colors, no cost limit.
pub fn random_template(g: &Graph, colors: u32, rng: &mut ChaCha8Rng) -> Template {
    let mut t = Template::empty(g.n());
    for v in 0..g.n() {
        match rng.gen_range(0..3) {
            0 if colors > 0 => {
                let c = rng.gen_range(1..=colors);
                if g.neighbors(v).iter().all(|&u| t.color_of(u) != Some(c)) {
                    t.set_precolor(v, c);
                }
            }
            1 => {
                let fs: Vec<u32> = (1..=colors).filter(|_| rng.gen_bool(0.3)).collect();
                t.set_forbidden(v, fs);
            }
            _ => {}
        }
    }
    t
}

/// Whether `values` splits into `q` nonempty parts each summing below `2k`,
/// by trying every assignment of elements to parts.
pub fn brute_force_bounded_partition(values: &[usize], k: usize, q: usize) -> bool {
    let n = values.len();
    if q == 0 || q > n {
        return false;
    }
    let mut part = vec![0usize; n];
    loop {
        let mut sums = vec![0usize; q];
        let mut used = vec![false; q];
        for (i, &p) in part.iter().enumerate() {
            sums[p] += values[i];
            used[p] = true;
        }
        if used.iter().all(|&u| u) && sums.iter().all(|&s| s < 2 * k) {
            return true;
        }
        let mut i = 0;
        while i < n && part[i] == q - 1 {
            part[i] = 0;
            i += 1;
        }
        if i == n {
            return false;
        }
        part[i] += 1;
    }
}
