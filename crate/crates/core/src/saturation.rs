//! K_r-saturating non-edges.
//!
//! A non-edge `uv` of a K_r-free graph is saturating when `N(u) ∩ N(v)` holds
//! a clique on `r − 2` vertices. The counter fixes `u`, builds the link graph
//! of `u` (rows `N(x) ∩ N(u)` for `x ∈ N(u)`, with zero words dropped) and
//! runs the shared clique engine on it for every later non-neighbor `v`.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::clique::{CliqueSearch, RowAccess};
use crate::error::{Error, Result};
use crate::graph::{Bits, Graph, WORD_BITS};

/// Outcome of counting K_r-saturating non-edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationReport {
    pub r: usize,
    pub count: usize,
    pub total_nonedges: usize,
    /// Per-pair verdicts `(u, v, saturating)` with `u < v`, lexicographic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classified: Option<Vec<(usize, usize, bool)>>,
}

impl SaturationReport {
    /// The saturating pairs, when the report carries a classification.
    pub fn saturating_pairs(&self) -> Option<Vec<(usize, usize)>> {
        self.classified
            .as_ref()
            .map(|c| c.iter().filter(|p| p.2).map(|&(u, v, _)| (u, v)).collect())
    }

    /// CSV with header `u,v,saturating`.
    pub fn to_csv(&self) -> Option<String> {
        let classified = self.classified.as_ref()?;
        let mut out = String::from("u,v,saturating\n");
        for &(u, v, s) in classified {
            out.push_str(&format!("{u},{v},{s}\n"));
        }
        Some(out)
    }
}

/// Worker count for the parallel counter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Workers {
    /// Rayon's global pool.
    Default,
    Fixed(usize),
}

fn check_order(r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("clique order must be at least 2, got {r}")));
    }
    Ok(())
}

fn require_clique_free(g: &Graph, r: usize) -> Result<()> {
    match g.find_clique(r) {
        Some(witness) => Err(Error::CliqueFound { r, witness }),
        None => Ok(()),
    }
}

pub fn is_saturating_pair(g: &Graph, u: usize, v: usize, r: usize) -> Result<bool> {
    check_order(r)?;
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::Loop(u));
    }
    if g.has_edge(u, v) {
        return Err(Error::AlreadyEdge { u: u.min(v), v: u.max(v) });
    }
    require_clique_free(g, r)?;
    Ok(pair_is_saturating(g, u, v, r))
}

/// Saturation test without precondition checks.
pub(crate) fn pair_is_saturating(g: &Graph, u: usize, v: usize, r: usize) -> bool {
    let common = g.common_neighbors(u, v);
    let mut search = CliqueSearch::new(g.stride());
    let mut out = Vec::new();
    search.find(g, common.words(), r - 2, &mut out)
}

pub fn count_saturating(g: &Graph, r: usize) -> Result<SaturationReport> {
    count_saturating_with(g, r, Workers::Default)
}

pub fn count_saturating_with(g: &Graph, r: usize, workers: Workers) -> Result<SaturationReport> {
    check_order(r)?;
    require_clique_free(g, r)?;
    let reps = class_representatives(g);
    let count = run(workers, || {
        (0..g.n())
            .into_par_iter()
            .map_init(|| LinkScan::new(g, &reps), |scan, u| scan.count_row(g, u, r))
            .sum()
    })?;
    Ok(SaturationReport {
        r,
        count,
        total_nonedges: g.nonedge_count(),
        classified: None,
    })
}

pub fn classify_nonedges(g: &Graph, r: usize) -> Result<SaturationReport> {
    classify_nonedges_with(g, r, Workers::Default)
}

pub fn classify_nonedges_with(g: &Graph, r: usize, workers: Workers) -> Result<SaturationReport> {
    check_order(r)?;
    require_clique_free(g, r)?;
    let reps = class_representatives(g);
    let rows: Vec<Vec<(usize, usize, bool)>> = run(workers, || {
        (0..g.n())
            .into_par_iter()
            .map_init(|| LinkScan::new(g, &reps), |scan, u| scan.classify_row(g, u, r))
            .collect()
    })?;
    let classified: Vec<_> = rows.into_iter().flatten().collect();
    let count = classified.iter().filter(|p| p.2).count();
    Ok(SaturationReport {
        r,
        count,
        total_nonedges: g.nonedge_count(),
        classified: Some(classified),
    })
}

fn run<T: Send>(workers: Workers, job: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        Workers::Default => Ok(job()),
        Workers::Fixed(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| Error::InvalidArgument(format!("cannot build worker pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

/// Mask holding the first vertex of each class of equal neighborhoods.
///
/// Common neighborhoods are unions of such classes and twins have equal
/// link rows, so edge searches only need to start from representatives.
fn class_representatives(g: &Graph) -> Vec<u64> {
    let mut seen: HashSet<&[u64]> = HashSet::new();
    let mut reps = vec![0u64; g.stride()];
    for v in 0..g.n() {
        if seen.insert(g.row(v)) {
            reps[v / WORD_BITS] |= 1 << (v % WORD_BITS);
        }
    }
    reps
}

/// Link graph of one vertex: rows `N(x) ∩ N(u)` stored as (word index, word)
/// runs so that sparse intersections skip empty words.
struct LinkRows {
    start: Vec<u32>,
    entries: Vec<(u32, u64)>,
}

impl LinkRows {
    fn rebuild(&mut self, g: &Graph, u: usize) {
        let n = g.n();
        self.start.clear();
        self.start.resize(n + 1, 0);
        self.entries.clear();
        let row_u = g.row(u);
        let mut next = 0;
        for x in Bits::new(row_u) {
            for s in &mut self.start[next..=x] {
                *s = self.entries.len() as u32;
            }
            next = x + 1;
            for (i, (a, b)) in g.row(x).iter().zip(row_u).enumerate() {
                let w = a & b;
                if w != 0 {
                    self.entries.push((i as u32, w));
                }
            }
        }
        for s in &mut self.start[next..] {
            *s = self.entries.len() as u32;
        }
    }

    #[inline]
    fn entries(&self, v: usize) -> &[(u32, u64)] {
        &self.entries[self.start[v] as usize..self.start[v + 1] as usize]
    }
}

impl RowAccess for LinkRows {

    fn intersect_into(&self, v: usize, mask: &[u64], out: &mut [u64]) -> usize {
        out.fill(0);
        let mut count = 0;
        for &(i, w) in self.entries(v) {
            let x = w & mask[i as usize];
            out[i as usize] = x;
            count += x.count_ones() as usize;
        }
        count
    }

    #[inline]
    fn first_common(&self, v: usize, mask: &[u64]) -> Option<usize> {
        self.entries(v).iter().find_map(|&(i, w)| {
            let x = w & mask[i as usize];
            (x != 0).then(|| i as usize * WORD_BITS + x.trailing_zeros() as usize)
        })
    }
}

/// Per-worker scratch space.
struct LinkScan<'a> {
    /// One vertex per class of equal neighborhoods.
    reps: &'a [u64],
    link: LinkRows,
    search: CliqueSearch,
    common: Vec<u64>,
    witness: Vec<usize>,
}

impl<'a> LinkScan<'a> {
    fn new(g: &Graph, reps: &'a [u64]) -> Self {
        LinkScan {
            reps,
            link: LinkRows {
                start: Vec::new(),
                entries: Vec::new(),
            },
            search: CliqueSearch::new(g.stride()),
            common: vec![0; g.stride()],
            witness: Vec::new(),
        }
    }

    /// Visits every non-edge `uv` with `v > u`.
    fn scan_row(&mut self, g: &Graph, u: usize, r: usize, mut visit: impl FnMut(usize, bool)) {
        let n = g.n();
        let k = r - 2;
        let row_u = g.row(u);
        if k >= 2 {
            self.link.rebuild(g, u);
        }
        for v in u + 1..n {
            if row_u[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1 {
                continue;
            }
            let saturating = match k {
                0 => true,
                1 => row_u.iter().zip(g.row(v)).any(|(a, b)| a & b != 0),
                _ => {
                    let mut count = 0;
                    for ((c, a), b) in self.common.iter_mut().zip(row_u).zip(g.row(v)) {
                        *c = a & b;
                        count += c.count_ones() as usize;
                    }
                    self.witness.clear();
                    count >= k
                        && if k == 2 {
                            self.search.find_edge_by_class(&self.link, &self.common, self.reps, &mut self.witness)
                        } else {
                            self.search.find(&self.link, &self.common, k, &mut self.witness)
                        }
                }
            };
            visit(v, saturating);
        }
    }

    fn count_row(&mut self, g: &Graph, u: usize, r: usize) -> usize {
        let mut count = 0;
        self.scan_row(g, u, r, |_, s| count += s as usize);
        count
    }

    fn classify_row(&mut self, g: &Graph, u: usize, r: usize) -> Vec<(usize, usize, bool)> {
        let mut out = Vec::new();
        self.scan_row(g, u, r, |v, s| out.push((u, v, s)));
        out
    }
}
