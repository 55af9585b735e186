#![allow(dead_code)]

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use satlab::Graph;

pub fn is_clique(g: &Graph, vs: &[usize]) -> bool {
    vs.iter().tuple_combinations().all(|(&a, &b)| g.has_edge(a, b))
}

pub fn has_clique(g: &Graph, r: usize) -> bool {
    (0..g.n()).combinations(r).any(|vs| is_clique(g, &vs))
}

/// Non-edges `uv` for which some (r−2)-subset of common neighbours is a clique.
pub fn naive_saturating(g: &Graph, r: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (u, v) in (0..g.n()).tuple_combinations() {
        if g.has_edge(u, v) {
            continue;
        }
        let common: Vec<usize> = (0..g.n()).filter(|&w| g.has_edge(u, w) && g.has_edge(v, w)).collect();
        if common.iter().copied().combinations(r - 2).any(|s| is_clique(g, &s)) {
            out.push((u, v));
        }
    }
    out
}

/// Random K4-free graph: shuffled pairs, each kept with probability `p` unless it closes a K4.
pub fn random_k4free<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    pairs.shuffle(rng);
    let mut g = Graph::empty(n).unwrap();
    for (u, v) in pairs {
        if rng.random_bool(p) && !common_edge(&g, u, v) {
            g = g.with_edge(u, v).unwrap();
        }
    }
    g
}

fn common_edge(g: &Graph, u: usize, v: usize) -> bool {
    let common: Vec<usize> = (0..g.n()).filter(|&w| g.has_edge(u, w) && g.has_edge(v, w)).collect();
    common.iter().tuple_combinations().any(|(&a, &b)| g.has_edge(a, b))
}

/// K4-free graph with a triangle and exactly ⌊n²/4⌋ edges: a balanced
/// complete bipartite graph with one cross edge moved inside a side, then
/// `swaps` random edge moves that keep both properties.
pub fn random_dense_triangle_graph<R: Rng>(rng: &mut R, n: usize, swaps: usize) -> Graph {
    assert!(n >= 4);
    let mut g = satlab::constructions::turan_bipartite(n).unwrap();
    let side: Vec<usize> = (0..n).filter(|&v| v != 0 && !g.has_edge(0, v)).collect();
    let across = (0..n).find(|&v| g.has_edge(0, v)).unwrap();
    g = g.with_edge(0, side[0]).unwrap().without_edge(0, across).unwrap();
    let mut done = 0;
    let mut attempts = 0;
    while done < swaps && attempts < swaps * 50 {
        attempts += 1;
        let edges: Vec<_> = g.edges().collect();
        let (u, v) = edges[rng.random_range(0..edges.len())];
        let (x, y) = (rng.random_range(0..n), rng.random_range(0..n));
        if x == y || g.has_edge(x, y) {
            continue;
        }
        let removed = g.without_edge(u, v).unwrap();
        if common_edge(&removed, x, y) {
            continue;
        }
        let h = removed.with_edge(x, y).unwrap();
        if h.contains_triangle() {
            g = h;
            done += 1;
        }
    }
    g
}
