//! Bit-masked recursive clique search.
//!
//! The search is written against [`RowAccess`] so the same engine runs on
//! dense graph rows and on the compressed link graphs used by the saturation
//! counter.

use crate::graph::{popcount, Bits, Graph, WORD_BITS};

/// Neighborhood rows restricted to some candidate mask.
pub(crate) trait RowAccess {
    /// Writes `row(v) & mask` into `out` and returns its popcount.
    fn intersect_into(&self, v: usize, mask: &[u64], out: &mut [u64]) -> usize;

    /// Some vertex of `row(v) & mask`.
    fn first_common(&self, v: usize, mask: &[u64]) -> Option<usize>;
}

impl RowAccess for Graph {
    #[inline]
    fn intersect_into(&self, v: usize, mask: &[u64], out: &mut [u64]) -> usize {
        let mut count = 0;
        for ((o, r), m) in out.iter_mut().zip(self.row(v)).zip(mask) {
            *o = r & m;
            count += o.count_ones() as usize;
        }
        count
    }

    #[inline]
    fn first_common(&self, v: usize, mask: &[u64]) -> Option<usize> {
        self.row(v)
            .iter()
            .zip(mask)
            .enumerate()
            .find_map(|(i, (r, m))| {
                let w = r & m;
                (w != 0).then(|| i * WORD_BITS + w.trailing_zeros() as usize)
            })
    }
}

/// Scratch buffers reused across recursion levels.
pub(crate) struct CliqueSearch {
    stride: usize,
    levels: Vec<Vec<u64>>,
}

impl CliqueSearch {
    pub(crate) fn new(stride: usize) -> Self {
        CliqueSearch {
            stride,
            levels: Vec::new(),
        }
    }

    /// Finds a clique of `k` vertices inside `cand`, pushing it onto `out`.
    pub(crate) fn find<R: RowAccess>(&mut self, rows: &R, cand: &[u64], k: usize, out: &mut Vec<usize>) -> bool {
        debug_assert_eq!(cand.len(), self.stride);
        self.search(rows, cand, k, 0, out)
    }

    /// Edge search in `cand` scanning only the vertices of `cand & reps`.
    ///
    /// `cand` must be a union of classes of vertices with identical rows and
    /// `reps` must hold one vertex of each class; an edge at `v` then implies
    /// an edge at the representative of `v`.
    pub(crate) fn find_edge_by_class<R: RowAccess>(&mut self, rows: &R, cand: &[u64], reps: &[u64], out: &mut Vec<usize>) -> bool {
        for (i, (c, r)) in cand.iter().zip(reps).enumerate() {
            let mut w = c & r;
            while w != 0 {
                let v = i * WORD_BITS + w.trailing_zeros() as usize;
                w &= w - 1;
                if let Some(x) = rows.first_common(v, cand) {
                    out.push(v);
                    out.push(x);
                    return true;
                }
            }
        }
        false
    }

    fn search<R: RowAccess>(&mut self, rows: &R, cand: &[u64], k: usize, depth: usize, out: &mut Vec<usize>) -> bool {
        match k {
            0 => return true,
            1 => {
                return match Bits::new(cand).next() {
                    Some(v) => {
                        out.push(v);
                        true
                    }
                    None => false,
                }
            }
            2 => {
                for v in Bits::new(cand) {
                    if let Some(w) = rows.first_common(v, cand) {
                        out.push(v);
                        out.push(w);
                        return true;
                    }
                }
                return false;
            }
            _ => {}
        }
        if popcount(cand) < k {
            return false;
        }
        while self.levels.len() <= depth {
            self.levels.push(vec![0; 2 * self.stride]);
        }
        let mut buf = std::mem::take(&mut self.levels[depth]);
        let (remaining, next) = buf.split_at_mut(self.stride);
        remaining.copy_from_slice(cand);
        let mut left = popcount(remaining);
        let mut found = false;
        for v in Bits::new(cand) {
            if left < k {
                break;
            }
            remaining[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
            left -= 1;
            if rows.intersect_into(v, remaining, next) >= k - 1 && self.search(rows, next, k - 1, depth + 1, out) {
                out.push(v);
                found = true;
                break;
            }
        }
        self.levels[depth] = buf;
        found
    }
}

/// Vertex order obtained by repeatedly removing a minimum-degree vertex.
pub(crate) fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_degree = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_degree + 1];
    for v in 0..n {
        buckets[degree[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    while order.len() < n {
        d = d.min(max_degree);
        let Some(v) = buckets[d].pop() else {
            d += 1;
            continue;
        };
        if removed[v] || degree[v] != d {
            continue;
        }
        removed[v] = true;
        order.push(v);
        for w in Bits::new(g.row(v)) {
            if !removed[w] {
                degree[w] -= 1;
                buckets[degree[w]].push(w);
                d = d.min(degree[w]);
            }
        }
    }
    order
}

/// Some clique on `r` vertices, sorted ascending.
pub(crate) fn find_clique(g: &Graph, r: usize) -> Option<Vec<usize>> {
    let n = g.n();
    if r == 0 {
        return Some(Vec::new());
    }
    if r > n {
        return None;
    }
    let stride = g.stride();
    let mut later = vec![0u64; stride];
    for v in 0..n {
        later[v / WORD_BITS] |= 1 << (v % WORD_BITS);
    }
    let mut cand = vec![0u64; stride];
    let mut search = CliqueSearch::new(stride);
    let mut out = Vec::with_capacity(r);
    for v in degeneracy_order(g) {
        later[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
        if g.intersect_into(v, &later, &mut cand) + 1 < r {
            continue;
        }
        if search.find(g, &cand, r - 1, &mut out) {
            out.push(v);
            out.sort_unstable();
            return Some(out);
        }
        out.clear();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_clique(g: &Graph, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
    }

    #[test]
    fn finds_cliques_of_every_order_in_complete_graph() {
        let k7 = Graph::complete(7).unwrap();
        for r in 1..=7 {
            let c = find_clique(&k7, r).unwrap();
            assert_eq!(c.len(), r);
            assert!(is_clique(&k7, &c));
        }
        assert!(find_clique(&k7, 8).is_none());
    }

    #[test]
    fn degeneracy_order_is_a_permutation() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap();
        let mut order = degeneracy_order(&g);
        assert_eq!(order.len(), 6);
        order.sort_unstable();
        assert_eq!(order, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn witness_is_a_clique_across_word_boundary() {
        let mut edges = Vec::new();
        let vs = [3, 63, 64, 127, 128];
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(200, &edges).unwrap();
        assert_eq!(find_clique(&g, 5).unwrap(), vs.to_vec());
        assert!(find_clique(&g, 6).is_none());
    }
}
