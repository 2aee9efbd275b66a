//! Reproducible pseudo-random instance families.
//!
//! All randomness comes from [`Lcg`], a 64-bit linear congruential generator
//!
//! ```text
//! state <- state * 6364136223846793005 + 1442695040888963407   (mod 2^64)
//! ```
//!
//! seeded with `state = seed`. Each draw advances the state once and uses the
//! high 32 bits; `below(k)` is that value modulo `k`. The same seed therefore
//! yields byte-identical instances on every platform.

use crate::graph::{Graph, VertexSet};
use crate::instance::{Instance, ThresholdMap};
use crate::td::TreeDecomposition;

#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        (self.state >> 32) as u32
    }

    /// A value in `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        self.next_u32() as usize % bound
    }

    /// True with probability `percent / 100`.
    pub fn percent(&mut self, percent: usize) -> bool {
        self.below(100) < percent
    }
}

/// Draws a threshold for a vertex of the given degree: 0, 1 or the degree,
/// each with probability one third (degree-0 vertices always get 0).
fn draw_threshold(rng: &mut Lcg, degree: usize) -> usize {
    match (degree, rng.below(3)) {
        (0, _) => 0,
        (_, 0) => 0,
        (_, 1) => 1,
        (d, _) => d,
    }
}

fn with_random_thresholds(graph: Graph, rng: &mut Lcg) -> Instance {
    let tau = graph
        .vertices()
        .map(|u| draw_threshold(rng, graph.degree(u)))
        .collect();
    Instance::new(graph, ThresholdMap::new(tau)).expect("drawn thresholds are in the regime")
}

/// Erdős–Rényi style graph: each pair `u < v` (lexicographic order) is an
/// edge with probability `edge_percent / 100`.
pub fn random_graph(n: usize, edge_percent: usize, rng: &mut Lcg) -> Graph {
    let mut g = Graph::empty(n);
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.percent(edge_percent) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn random_instance(n: usize, edge_percent: usize, rng: &mut Lcg) -> Instance {
    let g = random_graph(n, edge_percent, rng);
    with_random_thresholds(g, rng)
}

/// Lowers thresholds until no edge joins two vertices with `tau = deg`:
/// scanning vertices in order, a saturated vertex with a saturated
/// neighbour gets threshold 1 (or 0 when its degree is 1).
pub fn demote_saturated_edges(inst: &Instance) -> Instance {
    let g = inst.graph();
    let mut tau: Vec<usize> = inst.thresholds().as_slice().to_vec();
    for u in g.vertices() {
        let saturated = |w: usize, tau: &[usize]| tau[w - 1] == g.degree(w);
        if saturated(u, &tau) && g.neighbors(u).iter().any(|&v| saturated(v, &tau)) {
            tau[u - 1] = if g.degree(u) >= 2 { 1 } else { 0 };
        }
    }
    Instance::new(g.clone(), ThresholdMap::new(tau)).expect("demotion stays in the regime")
}

pub fn random_kernelized_instance(n: usize, edge_percent: usize, rng: &mut Lcg) -> Instance {
    demote_saturated_edges(&random_instance(n, edge_percent, rng))
}

/// Random recursive tree: vertex `v >= 2` attaches to a uniform earlier vertex.
pub fn random_tree(n: usize, rng: &mut Lcg) -> Graph {
    let mut g = Graph::empty(n);
    for v in 2..=n {
        let parent = 1 + rng.below(v - 1);
        g.add_edge(parent, v).unwrap();
    }
    g
}

pub fn random_tree_instance(n: usize, rng: &mut Lcg) -> Instance {
    let g = random_tree(n, rng);
    with_random_thresholds(g, rng)
}

/// A random partial `k`-tree on `n` vertices together with a tree
/// decomposition of width at most `k`.
///
/// The first `min(n, k + 1)` vertices form a clique; every later vertex is
/// joined to a uniformly chosen existing bag's `k`-subset. Each edge of the
/// resulting `k`-tree is then kept with probability `keep_percent / 100`.
pub fn random_partial_ktree(
    n: usize,
    k: usize,
    keep_percent: usize,
    rng: &mut Lcg,
) -> (Graph, TreeDecomposition) {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let base = n.min(k + 1);
    let mut bags: Vec<VertexSet> = vec![(1..=base).collect()];
    let mut tree_edges = Vec::new();
    for u in 1..=base {
        for v in u + 1..=base {
            edges.push((u, v));
        }
    }
    for v in base + 1..=n {
        let host = rng.below(bags.len());
        let mut clique: Vec<usize> = bags[host].iter().copied().collect();
        if clique.len() > k {
            let drop = rng.below(clique.len());
            clique.remove(drop);
        }
        for &u in &clique {
            edges.push((u, v));
        }
        let mut bag: VertexSet = clique.into_iter().collect();
        bag.insert(v);
        bags.push(bag);
        tree_edges.push((host + 1, bags.len()));
    }
    let mut g = Graph::empty(n);
    for (u, v) in edges {
        if rng.percent(keep_percent) {
            g.add_edge(u.min(v), u.max(v)).unwrap();
        }
    }
    let td = TreeDecomposition::new(bags, tree_edges);
    (g, td)
}

pub fn random_partial_ktree_instance(
    n: usize,
    k: usize,
    keep_percent: usize,
    rng: &mut Lcg,
) -> (Instance, TreeDecomposition) {
    let (g, td) = random_partial_ktree(n, k, keep_percent, rng);
    (with_random_thresholds(g, rng), td)
}
