//! Exhaustive ground truth for small `n`.
//!
//! Graphs on at most [`ORACLE_MAX_N`] vertices are keyed by the upper triangle
//! of their adjacency matrix in graph6 (column) order, position `p(i, j) =
//! j(j − 1)/2 + i`, with position 0 as the most significant bit. Comparing
//! keys as integers compares the bit strings lexicographically.
//!
//! Enumeration is orderly: a labelled graph is kept iff its key is maximal
//! over all relabellings, and children add one edge after the last set
//! position. Deleting the last edge of a maximal key leaves a maximal key, so
//! every class is produced exactly once, from its unique parent.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::graph6::to_graph6;
use crate::saturation::count_saturating;

/// Largest vertex count handled by the oracle.
pub const ORACLE_MAX_N: usize = 9;

type Rows = [u16; ORACLE_MAX_N];

fn check_n(n: usize) -> Result<()> {
    if n > ORACLE_MAX_N {
        return Err(Error::InvalidArgument(format!("oracle handles n <= {ORACLE_MAX_N}, got {n}")));
    }
    Ok(())
}

#[inline]
fn position(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

#[inline]
fn key_bit(p: usize) -> u64 {
    1u64 << (63 - p)
}

/// Key mask covering columns `1..=j`.
#[inline]
fn prefix_mask(j: usize) -> u64 {
    let len = j * (j + 1) / 2;
    if len == 0 {
        0
    } else {
        !0u64 << (64 - len)
    }
}

fn pair_table(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    pairs
}

fn rows_of(g: &Graph) -> Rows {
    let mut rows = [0u16; ORACLE_MAX_N];
    for (u, v) in g.edges() {
        rows[u] |= 1 << v;
        rows[v] |= 1 << u;
    }
    rows
}

#[cfg(test)]
fn key_of(n: usize, rows: &Rows) -> u64 {
    let mut key = 0;
    for j in 1..n {
        for i in 0..j {
            if rows[i] >> j & 1 == 1 {
                key |= key_bit(position(i, j));
            }
        }
    }
    key
}

fn graph_from_key(n: usize, key: u64) -> Graph {
    let mut b = GraphBuilder::new(n).expect("n within the oracle cap");
    for j in 1..n {
        for i in 0..j {
            if key & key_bit(position(i, j)) != 0 {
                b.set(i, j);
            }
        }
    }
    b.build()
}

/// For each vertex, the mask of smaller vertices with the same open or closed neighborhood.
fn lower_twins(n: usize, rows: &Rows) -> Rows {
    let mut twins = [0u16; ORACLE_MAX_N];
    for v in 0..n {
        for u in 0..v {
            let strip = !((1u16 << u) | (1u16 << v));
            if rows[u] & strip == rows[v] & strip {
                twins[v] |= 1 << u;
            }
        }
    }
    twins
}

enum Goal {
    /// Find the maximal key.
    Maximize,
    /// Stop as soon as some relabelling beats the target key.
    Beat(u64),
}

/// Depth-first search over relabellings `σ` (position → vertex).
///
/// Twins are placed in increasing order, since swapping twins is an
/// automorphism and leaves the key unchanged.
struct Labeling<'a> {
    n: usize,
    rows: &'a Rows,
    allowed: &'a [u16],
    twins: Rows,
    goal: Goal,
    best: u64,
    best_perm: Vec<usize>,
    perm: Vec<usize>,
    beaten: bool,
}

impl Labeling<'_> {
    fn run(&mut self, j: usize, placed: u16, key: u64) {
        if self.beaten {
            return;
        }
        if j == self.n {
            if let Goal::Maximize = self.goal {
                if key > self.best || self.best_perm.is_empty() {
                    self.best = key;
                    self.best_perm = self.perm.clone();
                }
            }
            return;
        }
        let mut cands = self.allowed[j] & !placed;
        while cands != 0 {
            let v = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            if self.twins[v] & !placed != 0 {
                continue;
            }
            let mut next = key;
            for (i, &u) in self.perm.iter().enumerate() {
                if self.rows[u] >> v & 1 == 1 {
                    next |= key_bit(position(i, j));
                }
            }
            let mask = prefix_mask(j);
            match self.goal {
                Goal::Maximize => {
                    if !self.best_perm.is_empty() && next & mask < self.best & mask {
                        continue;
                    }
                }
                Goal::Beat(target) => {
                    if next & mask > target & mask {
                        self.beaten = true;
                        return;
                    }
                    if next & mask < target & mask {
                        continue;
                    }
                }
            }
            self.perm.push(v);
            self.run(j + 1, placed | 1 << v, next);
            self.perm.pop();
            if self.beaten {
                return;
            }
        }
    }
}

/// True iff no relabelling of `rows` has a larger key than `key`.
fn is_maximal(n: usize, rows: &Rows, key: u64) -> bool {
    let all = if n == 0 { 0 } else { (1u16 << n) - 1 };
    let allowed = vec![all; n];
    let mut search = Labeling {
        n,
        rows,
        allowed: &allowed,
        twins: lower_twins(n, rows),
        goal: Goal::Beat(key),
        best: 0,
        best_perm: Vec::new(),
        perm: Vec::with_capacity(n),
        beaten: false,
    };
    search.run(0, 0, 0);
    !search.beaten
}

/// Ordered cells of the coarsest equitable refinement of the degree partition.
fn refine(n: usize, rows: &Rows) -> Vec<u16> {
    let mut color: Vec<usize> = (0..n).map(|v| rows[v].count_ones() as usize).collect();
    let mut classes = usize::MAX;
    loop {
        let palette = color.iter().copied().max().map_or(0, |m| m + 1);
        let signature = |v: usize| -> (usize, Vec<usize>) {
            let mut counts = vec![0; palette];
            for u in 0..n {
                if rows[v] >> u & 1 == 1 {
                    counts[color[u]] += 1;
                }
            }
            (color[v], counts)
        };
        let sigs: Vec<_> = (0..n).map(signature).collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        color = sigs.iter().map(|s| distinct.binary_search(s).expect("present")).collect();
        if distinct.len() == classes {
            break;
        }
        classes = distinct.len();
    }
    let mut cells = vec![0u16; classes.min(n)];
    for v in 0..n {
        cells[color[v]] |= 1 << v;
    }
    cells
}

/// Canonical byte string: graph6 of the relabelling with the largest key
/// among those that list refinement cells in order. Equal iff isomorphic.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>> {
    Ok(to_graph6(&canonical_graph(g)?).into_bytes())
}

/// The canonical relabelling of `g` as a graph.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let n = g.n();
    check_n(n)?;
    let rows = rows_of(g);
    let mut allowed = Vec::with_capacity(n);
    for cell in refine(n, &rows) {
        allowed.extend(std::iter::repeat_n(cell, cell.count_ones() as usize));
    }
    let mut search = Labeling {
        n,
        rows: &rows,
        allowed: &allowed,
        twins: lower_twins(n, &rows),
        goal: Goal::Maximize,
        best: 0,
        best_perm: Vec::new(),
        perm: Vec::with_capacity(n),
        beaten: false,
    };
    search.run(0, 0, 0);
    Ok(graph_from_key(n, search.best))
}

fn creates_k4(rows: &Rows, i: usize, j: usize) -> bool {
    let mut common = rows[i] & rows[j];
    while common != 0 {
        let v = common.trailing_zeros() as usize;
        common &= common - 1;
        if rows[v] & common != 0 {
            return true;
        }
    }
    false
}

/// Restart point of an enumeration: the last graph it produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub n: usize,
    pub e: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone)]
struct Frame {
    key: u64,
    rows: Rows,
    edges: usize,
    next: usize,
}

/// Streams one graph per isomorphism class with `n` vertices and `e` edges.
pub struct GraphClasses {
    n: usize,
    e: usize,
    forbid_k4: bool,
    pairs: Vec<(usize, usize)>,
    stack: Vec<Frame>,
    emit_root: bool,
    last: Option<u64>,
}

impl GraphClasses {
    fn start(n: usize, e: usize, forbid_k4: bool) -> Result<Self> {
        check_n(n)?;
        let pairs = pair_table(n);
        let feasible = e <= pairs.len();
        Ok(GraphClasses {
            n,
            e,
            forbid_k4,
            stack: if feasible && e > 0 {
                vec![Frame {
                    key: 0,
                    rows: [0; ORACLE_MAX_N],
                    edges: 0,
                    next: 0,
                }]
            } else {
                Vec::new()
            },
            pairs,
            emit_root: e == 0,
            last: None,
        })
    }

    /// Where a later [`GraphClasses::resume`] should continue from.
    pub fn checkpoint(&self) -> Option<Checkpoint> {
        let key = self.last?;
        let edges = self
            .pairs
            .iter()
            .enumerate()
            .filter(|&(p, _)| key & key_bit(p) != 0)
            .map(|(_, &pair)| pair)
            .collect();
        Some(Checkpoint {
            n: self.n,
            e: self.e,
            edges,
        })
    }

    fn resume_with(checkpoint: &Checkpoint, forbid_k4: bool) -> Result<Self> {
        let mut classes = Self::start(checkpoint.n, checkpoint.e, forbid_k4)?;
        let n = checkpoint.n;
        if checkpoint.edges.len() != checkpoint.e {
            return Err(Error::InvalidArgument("checkpoint edge count does not match e".into()));
        }
        let mut positions = Vec::with_capacity(checkpoint.e);
        for &(a, b) in &checkpoint.edges {
            let (i, j) = (a.min(b), a.max(b));
            if j >= n || i == j {
                return Err(Error::InvalidArgument(format!("checkpoint edge ({a}, {b}) invalid for n = {n}")));
            }
            positions.push(position(i, j));
        }
        positions.sort_unstable();
        positions.dedup();
        if positions.len() != checkpoint.e {
            return Err(Error::InvalidArgument("checkpoint repeats an edge".into()));
        }
        let mut frame = Frame {
            key: 0,
            rows: [0; ORACLE_MAX_N],
            edges: 0,
            next: 0,
        };
        let mut stack = Vec::with_capacity(positions.len());
        for &p in &positions {
            stack.push(Frame { next: p + 1, ..frame.clone() });
            let (i, j) = classes.pairs[p];
            frame.rows[i] |= 1 << j;
            frame.rows[j] |= 1 << i;
            frame.key |= key_bit(p);
            frame.edges += 1;
        }
        if !is_maximal(n, &frame.rows, frame.key) {
            return Err(Error::InvalidArgument("checkpoint is not a canonical graph of this enumeration".into()));
        }
        if positions.is_empty() {
            classes.emit_root = false;
        } else {
            classes.stack = stack;
        }
        classes.last = Some(frame.key);
        Ok(classes)
    }

    /// Continues an enumeration of K4-free classes after `checkpoint`.
    pub fn resume(checkpoint: &Checkpoint) -> Result<Self> {
        Self::resume_with(checkpoint, true)
    }
}

impl Iterator for GraphClasses {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.emit_root {
            self.emit_root = false;
            self.last = Some(0);
            return Some(graph_from_key(self.n, 0));
        }
        let total = self.pairs.len();
        while let Some(top) = self.stack.last_mut() {
            if top.next >= total || top.edges + (total - top.next) < self.e {
                self.stack.pop();
                continue;
            }
            let p = top.next;
            top.next += 1;
            let (i, j) = self.pairs[p];
            if self.forbid_k4 && creates_k4(&top.rows, i, j) {
                continue;
            }
            let mut rows = top.rows;
            rows[i] |= 1 << j;
            rows[j] |= 1 << i;
            let key = top.key | key_bit(p);
            let edges = top.edges + 1;
            if !is_maximal(self.n, &rows, key) {
                continue;
            }
            if edges == self.e {
                self.last = Some(key);
                return Some(graph_from_key(self.n, key));
            }
            self.stack.push(Frame {
                key,
                rows,
                edges,
                next: p + 1,
            });
        }
        None
    }
}

/// One K4-free graph per isomorphism class with `n ≤ 9` vertices and `e` edges.
pub fn enumerate_k4free(n: usize, e: usize) -> Result<GraphClasses> {
    GraphClasses::start(n, e, true)
}

/// One graph per isomorphism class, no clique restriction.
pub fn enumerate_all(n: usize, e: usize) -> Result<GraphClasses> {
    GraphClasses::start(n, e, false)
}

/// Level-by-level generation with deduplication by [`canonical_form`].
/// Slower than [`enumerate_k4free`]; kept as an independent cross-check.
pub fn enumerate_by_dedup(n: usize, e: usize, forbid_k4: bool) -> Result<Vec<Graph>> {
    check_n(n)?;
    let mut level = vec![canonical_graph(&Graph::empty(n)?)?];
    for _ in 0..e {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            let rows = rows_of(g);
            for j in 1..n {
                for i in 0..j {
                    if g.has_edge(i, j) || (forbid_k4 && creates_k4(&rows, i, j)) {
                        continue;
                    }
                    let child = canonical_graph(&g.with_edge(i, j)?)?;
                    if seen.insert(to_graph6(&child)) {
                        next.push(child);
                    }
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// `f(n, e)` with an argmin witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRecord {
    pub n: usize,
    pub e: usize,
    pub f_min: usize,
    #[serde(serialize_with = "serialize_graph6")]
    pub witness: Graph,
    #[serde(rename = "classes")]
    pub graphs_enumerated: usize,
}

fn serialize_graph6<S: serde::Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_graph6(g))
}

/// Minimum number of K4-saturating pairs over K4-free graphs with `n` vertices and `e` edges.
///
/// Among minimizers the witness is the first triangle-free one, if any.
pub fn f_table(n: usize, e: usize) -> Result<OracleRecord> {
    let mut best: Option<(usize, Graph)> = None;
    let mut classes = 0;
    for g in enumerate_k4free(n, e)? {
        classes += 1;
        let f = count_saturating(&g, 4)?.count;
        let better = match &best {
            None => true,
            Some((b, w)) => f < *b || (f == *b && w.contains_triangle() && !g.contains_triangle()),
        };
        if better {
            best = Some((f, g));
        }
    }
    let (f_min, witness) = best.ok_or(Error::NoQualifyingGraph { n, e })?;
    Ok(OracleRecord {
        n,
        e,
        f_min,
        witness,
        graphs_enumerated: classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph6::from_graph6;

    fn c5() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    fn relabel(g: &Graph, perm: &[usize]) -> Graph {
        let edges: Vec<_> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(g.n(), &edges).unwrap()
    }

    #[test]
    fn canonical_form_identifies_relabellings() {
        let base = canonical_form(&c5()).unwrap();
        for perm in [[1, 3, 0, 4, 2], [4, 3, 2, 1, 0], [2, 0, 4, 1, 3]] {
            assert_eq!(canonical_form(&relabel(&c5(), &perm)).unwrap(), base);
        }
        let p5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_ne!(canonical_form(&p5).unwrap(), base);
    }

    #[test]
    fn canonical_form_rejects_large_graphs() {
        assert!(canonical_form(&Graph::empty(10).unwrap()).is_err());
        assert!(enumerate_k4free(10, 3).is_err());
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_k4free(4, 6).unwrap().count(), 0);
        let one: Vec<_> = enumerate_k4free(4, 5).unwrap().collect();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].edge_count(), 5);
        assert_eq!(enumerate_k4free(5, 0).unwrap().count(), 1);
        assert_eq!(enumerate_all(4, 7).unwrap().count(), 0);
    }

    #[test]
    fn class_totals_for_four_and_five_vertices() {
        let total = |n: usize| (0..=n * (n - 1) / 2).map(|e| enumerate_all(n, e).unwrap().count()).sum::<usize>();
        assert_eq!(total(4), 11);
        assert_eq!(total(5), 34);
    }

    #[test]
    fn orderly_output_is_maximal_and_distinct() {
        let graphs: Vec<_> = enumerate_k4free(6, 7).unwrap().collect();
        let forms: HashSet<_> = graphs.iter().map(|g| canonical_form(g).unwrap()).collect();
        assert_eq!(forms.len(), graphs.len());
        for g in &graphs {
            let rows = rows_of(g);
            assert!(is_maximal(6, &rows, key_of(6, &rows)));
        }
    }

    #[test]
    fn f_of_k4_minus_edge() {
        let rec = f_table(4, 5).unwrap();
        assert_eq!((rec.f_min, rec.graphs_enumerated), (1, 1));
        assert_eq!(f_table(4, 6), Err(Error::NoQualifyingGraph { n: 4, e: 6 }));
    }

    #[test]
    fn resume_continues_after_checkpoint() {
        let all: Vec<_> = enumerate_k4free(6, 8).unwrap().collect();
        assert!(all.len() > 3);
        let mut it = enumerate_k4free(6, 8).unwrap();
        let head: Vec<_> = it.by_ref().take(3).collect();
        let cp = it.checkpoint().unwrap();
        let json = serde_json::to_string(&cp).unwrap();
        let cp: Checkpoint = serde_json::from_str(&json).unwrap();
        let tail: Vec<_> = GraphClasses::resume(&cp).unwrap().collect();
        assert_eq!(head.len() + tail.len(), all.len());
        assert_eq!([head, tail].concat(), all);
    }

    #[test]
    fn resume_rejects_non_canonical_checkpoint() {
        let cp = Checkpoint {
            n: 4,
            e: 1,
            edges: vec![(2, 3)],
        };
        assert!(GraphClasses::resume(&cp).is_err());
        let k4 = from_graph6("C~").unwrap();
        let cp = Checkpoint {
            n: 4,
            e: 6,
            edges: k4.edges().collect(),
        };
        assert!(GraphClasses::resume(&cp).unwrap().next().is_none());
    }
}
