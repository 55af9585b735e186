//! Immutable simple undirected graphs stored as bit rows.
//!
//! Row `v` holds the neighborhood `N(v)` as a bitmask padded to a whole
//! number of 64-bit words, so neighborhood intersections are word-wise ANDs.

use std::fmt;

use crate::clique;
use crate::error::{Error, Result};

/// Default upper bound on the number of vertices.
pub const DEFAULT_MAX_VERTICES: usize = 4096;

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// Iterator over the set bits of a word slice, in increasing order.
pub(crate) struct Bits<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl<'a> Bits<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        let current = words.first().copied().unwrap_or(0);
        Bits {
            words,
            index: 0,
            current,
        }
    }
}

impl Iterator for Bits<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD_BITS + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

#[inline]
pub(crate) fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// A set of vertices of a graph on `n` vertices, as an `n`-bit mask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.words[v / WORD_BITS] |= 1 << (v % WORD_BITS);
        }
        s
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vertices: I) -> Result<Self> {
        let mut s = Self::empty(n);
        for v in vertices {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub(crate) fn from_words(n: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(n));
        VertexSet { n, words }
    }

    /// Size of the ground set.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        self.words[v / WORD_BITS] |= 1 << (v % WORD_BITS);
        Ok(())
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.n {
            self.words[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    pub fn len(&self) -> usize {
        popcount(&self.words)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        Bits::new(&self.words)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n, "vertex sets over different ground sets");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        VertexSet { n: self.n, words }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n, "vertex sets over different ground sets");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        VertexSet { n: self.n, words }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n, "vertex sets over different ground sets");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & !b)
            .collect();
        VertexSet { n: self.n, words }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.n == other.n && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
    edge_count: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        Ok(GraphBuilder::new(n)?.build())
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut b = GraphBuilder::new(n)?;
        for v in 1..n {
            for u in 0..v {
                b.add_edge(u, v)?;
            }
        }
        Ok(b.build())
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut b = GraphBuilder::new(n)?;
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Number of unordered vertex pairs that are not edges.
    pub fn nonedge_count(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2 - self.edge_count
    }

    /// Words per row.
    #[inline]
    pub(crate) fn stride(&self) -> usize {
        self.stride
    }

    /// Neighborhood bit row of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.row(u)[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        popcount(self.row(v))
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v).to_vec())
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| Bits::new(self.row(u)).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// `N(U)`: the vertices adjacent to every vertex of `us`.
    pub fn common_neighborhood(&self, us: &VertexSet) -> Result<VertexSet> {
        if us.universe() != self.n {
            return Err(Error::InvalidArgument(format!(
                "vertex set over {} vertices used with a graph on {}",
                us.universe(),
                self.n
            )));
        }
        let mut iter = us.iter();
        let first = iter.next().ok_or(Error::EmptyVertexSet)?;
        let mut words = self.row(first).to_vec();
        for v in iter {
            for (w, r) in words.iter_mut().zip(self.row(v)) {
                *w &= r;
            }
        }
        Ok(VertexSet::from_words(self.n, words))
    }

    /// Common neighborhood of two vertices.
    pub fn common_neighbors(&self, u: usize, v: usize) -> VertexSet {
        let words = self.row(u).iter().zip(self.row(v)).map(|(a, b)| a & b).collect();
        VertexSet::from_words(self.n, words)
    }

    /// True iff the graph contains no clique on `r` vertices.
    pub fn max_clique_at_most(&self, r: usize) -> Result<bool> {
        if r < 2 {
            return Err(Error::InvalidArgument(format!("clique order must be at least 2, got {r}")));
        }
        Ok(self.find_clique(r).is_none())
    }

    /// Some clique on `r` vertices, sorted, if one exists.
    pub fn find_clique(&self, r: usize) -> Option<Vec<usize>> {
        clique::find_clique(self, r)
    }

    pub fn contains_triangle(&self) -> bool {
        self.find_triangle().is_some()
    }

    pub fn find_triangle(&self) -> Option<[usize; 3]> {
        for u in 0..self.n {
            for v in Bits::new(self.row(u)).filter(|&v| v > u) {
                let row_u = self.row(u);
                let row_v = self.row(v);
                // only look above v so each triangle is reported at its least vertex pair
                let start = (v + 1) / WORD_BITS;
                for i in start..self.stride {
                    let mut w = row_u[i] & row_v[i];
                    if i == start {
                        w &= !0u64 << ((v + 1) % WORD_BITS);
                    }
                    if w != 0 {
                        return Some([u, v, i * WORD_BITS + w.trailing_zeros() as usize]);
                    }
                }
            }
        }
        None
    }

    pub fn complement(&self) -> Graph {
        let mut rows = vec![0u64; self.rows.len()];
        let full = VertexSet::full(self.n);
        for v in 0..self.n {
            let dst = &mut rows[v * self.stride..(v + 1) * self.stride];
            for ((d, r), f) in dst.iter_mut().zip(self.row(v)).zip(full.words()) {
                *d = !r & f;
            }
            dst[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
        }
        Graph {
            n: self.n,
            stride: self.stride,
            rows,
            edge_count: self.nonedge_count(),
        }
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut b = GraphBuilder::from_graph(self);
        b.add_edge(u, v)?;
        Ok(b.build())
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut b = GraphBuilder::from_graph(self);
        b.remove_edge(u, v)?;
        Ok(b.build())
    }

    /// Subgraph induced on `keep`, relabelled to `0..keep.len()` in increasing order.
    pub fn induced(&self, keep: &VertexSet) -> Graph {
        let map: Vec<usize> = keep.to_vec();
        let mut b = GraphBuilder::with_max(map.len(), usize::MAX).expect("unbounded builder");
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.set(i, j);
                }
            }
        }
        b.build()
    }

    /// Number of edges with both endpoints in `s`.
    pub fn edges_within(&self, s: &VertexSet) -> usize {
        let twice: usize = s
            .iter()
            .map(|v| self.row(v).iter().zip(s.words()).map(|(a, b)| (a & b).count_ones() as usize).sum::<usize>())
            .sum();
        twice / 2
    }

    /// Number of edges with one endpoint in `a` and the other in `b`; `a`, `b` disjoint.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        a.iter()
            .map(|v| self.row(v).iter().zip(b.words()).map(|(x, y)| (x & y).count_ones() as usize).sum::<usize>())
            .sum()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Mutable staging area for building a [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_max(n, DEFAULT_MAX_VERTICES)
    }

    pub fn with_max(n: usize, max: usize) -> Result<Self> {
        if n > max {
            return Err(Error::TooManyVertices { n, max });
        }
        let stride = words_for(n).max(1);
        Ok(GraphBuilder {
            n,
            stride,
            rows: vec![0; n * stride],
        })
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphBuilder {
            n: g.n,
            stride: g.stride,
            rows: g.rows.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub(crate) fn set(&mut self, u: usize, v: usize) {
        self.rows[u * self.stride + v / WORD_BITS] |= 1 << (v % WORD_BITS);
        self.rows[v * self.stride + u / WORD_BITS] |= 1 << (u % WORD_BITS);
    }

    fn check(&self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        Ok(())
    }

    /// Adds `uv`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check(u, v)?;
        self.set(u, v);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check(u, v)?;
        self.rows[u * self.stride + v / WORD_BITS] &= !(1 << (v % WORD_BITS));
        self.rows[v * self.stride + u / WORD_BITS] &= !(1 << (u % WORD_BITS));
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.stride + v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    pub fn build(self) -> Graph {
        let edge_count = popcount(&self.rows) / 2;
        Graph {
            n: self.n,
            stride: self.stride,
            rows: self.rows,
            edge_count,
        }
    }
}
