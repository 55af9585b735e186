//! Vertex-disjoint triangle packings.
//!
//! Small graphs get an exact branch and bound that returns the
//! lexicographically least maximum packing. Sequences of ascending triangles
//! are explored in lexicographic order and only strictly longer packings
//! replace the incumbent, so the first maximum reached is the least one.
//! The bound is the smaller of `⌊|covered vertices| / 3⌋` and a greedy
//! hitting set of the remaining triangles: disjoint triangles hit a hitting
//! set in distinct vertices.
//!
//! Larger graphs get a greedy packing improved by 1-for-2 swaps.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Bits, Graph, VertexSet, WORD_BITS};

pub type Triangle = [usize; 3];

/// Default vertex count up to which packings are solved exactly.
pub const DEFAULT_EXACT_LIMIT: usize = 24;
/// Default search-node budget for the exact solver.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrianglePacking {
    /// Sorted triples, in ascending order.
    pub triangles: Vec<Triangle>,
    /// True iff the packing is proven maximum.
    pub exact: bool,
}

impl TrianglePacking {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// `V(𝒯)`.
    pub fn covered(&self, n: usize) -> VertexSet {
        VertexSet::from_vertices(n, self.triangles.iter().flatten().copied()).expect("validated packing")
    }

    /// Checks that every triple is a triangle of `g` and the triples are disjoint.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut seen = VertexSet::empty(g.n());
        for t in &self.triangles {
            for &v in t {
                if v >= g.n() {
                    return Err(Error::InvalidPacking(format!("vertex {v} out of range")));
                }
                if seen.contains(v) {
                    return Err(Error::InvalidPacking(format!("vertex {v} used twice")));
                }
                seen.insert(v)?;
            }
            let [x, y, z] = *t;
            if !(g.has_edge(x, y) && g.has_edge(y, z) && g.has_edge(x, z)) {
                return Err(Error::InvalidPacking(format!("{t:?} is not a triangle")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PackingOptions {
    pub exact_limit: usize,
    pub node_budget: u64,
}

impl Default for PackingOptions {
    fn default() -> Self {
        PackingOptions {
            exact_limit: DEFAULT_EXACT_LIMIT,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

pub fn max_triangle_packing(g: &Graph, exact_limit: usize) -> Result<TrianglePacking> {
    max_triangle_packing_with(
        g,
        PackingOptions {
            exact_limit,
            ..PackingOptions::default()
        },
    )
}

pub fn max_triangle_packing_with(g: &Graph, opts: PackingOptions) -> Result<TrianglePacking> {
    if g.n() <= opts.exact_limit {
        exact_packing(g, opts.node_budget)
    } else {
        Ok(heuristic_packing(g))
    }
}

/// All triangles as sorted triples, in lexicographic order.
pub fn list_triangles(g: &Graph) -> Vec<Triangle> {
    let mut out = Vec::new();
    for u in 0..g.n() {
        for v in Bits::new(g.row(u)).filter(|&v| v > u) {
            let common = g.common_neighbors(u, v);
            out.extend(common.iter().filter(|&w| w > v).map(|w| [u, v, w]));
        }
    }
    out
}

struct Exact<'a> {
    triangles: &'a [Triangle],
    n: usize,
    best: Vec<usize>,
    current: Vec<usize>,
    target: usize,
    nodes: u64,
    budget: u64,
    counts: Vec<usize>,
}

impl Exact<'_> {
    fn bound(&mut self, cands: &[usize]) -> usize {
        let mut covered = vec![false; self.n];
        for &i in cands {
            for &v in &self.triangles[i] {
                covered[v] = true;
            }
        }
        let by_vertices = covered.iter().filter(|&&c| c).count() / 3;

        let mut alive: Vec<usize> = cands.to_vec();
        let mut hitting = 0;
        while !alive.is_empty() && hitting < by_vertices {
            self.counts.iter_mut().for_each(|c| *c = 0);
            for &i in &alive {
                for &v in &self.triangles[i] {
                    self.counts[v] += 1;
                }
            }
            let pick = (0..self.n).max_by_key(|&v| (self.counts[v], std::cmp::Reverse(v))).expect("n > 0");
            alive.retain(|&i| !self.triangles[i].contains(&pick));
            hitting += 1;
        }
        by_vertices.min(hitting)
    }

    fn search(&mut self, cands: &[usize]) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::PackingGaveUp { nodes: self.budget });
        }
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if self.best.len() == self.target || cands.is_empty() {
            return Ok(());
        }
        if self.current.len() + self.bound(cands) <= self.best.len() {
            return Ok(());
        }
        for (pos, &i) in cands.iter().enumerate() {
            let t = self.triangles[i];
            let rest: Vec<usize> = cands[pos + 1..]
                .iter()
                .copied()
                .filter(|&j| self.triangles[j].iter().all(|v| !t.contains(v)))
                .collect();
            self.current.push(i);
            self.search(&rest)?;
            self.current.pop();
            if self.best.len() == self.target {
                break;
            }
        }
        Ok(())
    }
}

fn exact_packing(g: &Graph, budget: u64) -> Result<TrianglePacking> {
    let triangles = list_triangles(g);
    let all: Vec<usize> = (0..triangles.len()).collect();
    let mut solver = Exact {
        triangles: &triangles,
        n: g.n(),
        best: Vec::new(),
        current: Vec::new(),
        target: 0,
        nodes: 0,
        budget,
        counts: vec![0; g.n()],
    };
    solver.target = if all.is_empty() { 0 } else { solver.bound(&all) };
    solver.search(&all)?;
    Ok(TrianglePacking {
        triangles: solver.best.iter().map(|&i| triangles[i]).collect(),
        exact: true,
    })
}

fn first_triangle_in(g: &Graph, avail: &[u64]) -> Option<Triangle> {
    let stride = avail.len();
    let mut cand = vec![0u64; stride];
    for u in Bits::new(avail) {
        for ((c, r), a) in cand.iter_mut().zip(g.row(u)).zip(avail) {
            *c = r & a;
        }
        for v in Bits::new(&cand).filter(|&v| v > u) {
            let hit = g
                .row(v)
                .iter()
                .zip(&cand)
                .enumerate()
                .find_map(|(i, (r, c))| {
                    let mut w = r & c;
                    if i < (v + 1) / WORD_BITS {
                        w = 0;
                    } else if i == (v + 1) / WORD_BITS {
                        w &= !0u64 << ((v + 1) % WORD_BITS);
                    }
                    (w != 0).then(|| i * WORD_BITS + w.trailing_zeros() as usize)
                });
            if let Some(w) = hit {
                return Some([u, v, w]);
            }
        }
    }
    None
}

fn take(avail: &mut [u64], t: &Triangle) {
    for &v in t {
        avail[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
    }
}

fn give(avail: &mut [u64], t: &Triangle) {
    for &v in t {
        avail[v / WORD_BITS] |= 1 << (v % WORD_BITS);
    }
}

/// Triangles inside `free` that use at least one vertex of `t`, capped.
fn triangles_touching(g: &Graph, free: &[u64], t: &Triangle, cap: usize) -> Vec<Triangle> {
    let mut out = Vec::new();
    for &a in t {
        let nbrs: Vec<usize> = Bits::new(g.row(a)).filter(|&v| free[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1).collect();
        for (i, &b) in nbrs.iter().enumerate() {
            for &c in &nbrs[i + 1..] {
                if g.has_edge(b, c) {
                    let mut tri = [a, b, c];
                    tri.sort_unstable();
                    out.push(tri);
                    if out.len() >= cap {
                        return out;
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn heuristic_packing(g: &Graph) -> TrianglePacking {
    const SWAP_CAP: usize = 4096;
    let mut avail = VertexSet::full(g.n()).words().to_vec();
    let mut packing: Vec<Triangle> = Vec::new();
    let fill = |avail: &mut Vec<u64>, packing: &mut Vec<Triangle>| {
        while let Some(t) = first_triangle_in(g, avail) {
            take(avail, &t);
            packing.push(t);
        }
    };
    fill(&mut avail, &mut packing);
    'improve: loop {
        for i in 0..packing.len() {
            let t = packing[i];
            give(&mut avail, &t);
            let touching = triangles_touching(g, &avail, &t, SWAP_CAP);
            for (a, ta) in touching.iter().enumerate() {
                if let Some(tb) = touching[a + 1..].iter().find(|tb| tb.iter().all(|v| !ta.contains(v))) {
                    packing.swap_remove(i);
                    take(&mut avail, ta);
                    take(&mut avail, tb);
                    packing.push(*ta);
                    packing.push(*tb);
                    fill(&mut avail, &mut packing);
                    continue 'improve;
                }
            }
            take(&mut avail, &t);
        }
        break;
    }
    packing.sort_unstable();
    TrianglePacking {
        triangles: packing,
        exact: false,
    }
}
