//! Named graphs and pattern blow-ups.
//!
//! A blow-up replaces pattern vertex `i` by an independent set of `sizes[i]`
//! vertices and each pattern edge by a complete bipartite graph. Parts are
//! laid out contiguously in pattern order.

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexSet};

/// Largest pattern accepted by [`BlowupPattern`].
pub const MAX_PATTERN_VERTICES: usize = 16;

/// Pattern graph plus a part size per pattern vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupPattern {
    pub pattern: Graph,
    pub sizes: Vec<usize>,
}

impl BlowupPattern {
    pub fn new(pattern: Graph, sizes: Vec<usize>) -> Result<Self> {
        if pattern.n() > MAX_PATTERN_VERTICES {
            return Err(Error::InvalidArgument(format!(
                "pattern has {} vertices, at most {MAX_PATTERN_VERTICES} allowed",
                pattern.n()
            )));
        }
        if sizes.len() != pattern.n() {
            return Err(Error::InvalidArgument(format!(
                "{} part sizes given for a pattern on {} vertices",
                sizes.len(),
                pattern.n()
            )));
        }
        Ok(BlowupPattern { pattern, sizes })
    }

    pub fn vertex_count(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Half-open vertex range occupied by each part.
    pub fn part_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.sizes
            .iter()
            .map(|&s| {
                let r = start..start + s;
                start += s;
                r
            })
            .collect()
    }

    /// Pattern vertices with a nonempty part.
    pub fn support(&self) -> VertexSet {
        VertexSet::from_vertices(self.pattern.n(), (0..self.sizes.len()).filter(|&i| self.sizes[i] > 0))
            .expect("indices are in range")
    }

    /// `Σ_{ij ∈ E(P)} size_i · size_j`.
    pub fn edge_count(&self) -> usize {
        self.pattern.edges().map(|(i, j)| self.sizes[i] * self.sizes[j]).sum()
    }

    /// Saturating-pair count predicted by [`classify_parts`].
    pub fn saturating_count(&self, r: usize) -> usize {
        let cls = classify_parts(&self.pattern, &self.support(), r);
        let within: usize = cls.within.iter().map(|&i| self.sizes[i] * self.sizes[i].saturating_sub(1) / 2).sum();
        let cross: usize = cls.cross.iter().map(|&(i, j)| self.sizes[i] * self.sizes[j]).sum();
        within + cross
    }
}

pub fn blowup(bp: &BlowupPattern) -> Result<Graph> {
    let ranges = bp.part_ranges();
    let mut b = GraphBuilder::new(bp.vertex_count())?;
    for (i, j) in bp.pattern.edges() {
        for u in ranges[i].clone() {
            for v in ranges[j].clone() {
                b.add_edge(u, v)?;
            }
        }
    }
    Ok(b.build())
}

/// Which pattern-level pairs of a blow-up are K_r-saturating.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartClassification {
    pub r: usize,
    /// Pattern vertices whose internal pairs are saturating.
    pub within: Vec<usize>,
    /// Pattern non-edges `(i, j)`, `i < j`, whose cross pairs are saturating.
    pub cross: Vec<(usize, usize)>,
}

/// Classifies pattern vertices and non-edges, looking only at the `nonempty` support.
pub fn classify_parts(pattern: &Graph, nonempty: &VertexSet, r: usize) -> PartClassification {
    let k = r.saturating_sub(2);
    let has_clique_in = |s: VertexSet| -> bool { pattern.induced(&s).find_clique(k).is_some() };
    let support: Vec<usize> = nonempty.to_vec();
    let within = support
        .iter()
        .copied()
        .filter(|&i| has_clique_in(pattern.neighbors(i).intersection(nonempty)))
        .collect();
    let mut cross = Vec::new();
    for (a, &i) in support.iter().enumerate() {
        for &j in &support[a + 1..] {
            if !pattern.has_edge(i, j) && has_clique_in(pattern.common_neighbors(i, j).intersection(nonempty)) {
                cross.push((i, j));
            }
        }
    }
    PartClassification { r, within, cross }
}

/// The 5-cycle `v1..v5` with chord `v1v3`, as vertices `0..5`.
pub fn c5_chord() -> Graph {
    Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).expect("valid pattern")
}

fn multiple_of_66(n: usize) -> Result<usize> {
    if n == 0 || n % 66 != 0 {
        return Err(Error::NotDivisibleBy66(n));
    }
    Ok(n / 66)
}

/// Part sizes of `H`: `(16, 4, 16, 15, 15)·n/66` with one vertex moved from `V5` to `V2`.
pub fn h_sizes(n: usize) -> Result<Vec<usize>> {
    let m = multiple_of_66(n)?;
    Ok(vec![16 * m, 4 * m + 1, 16 * m, 15 * m, 15 * m - 1])
}

/// Part sizes of `H′`: `(16, 4, 16, 15, 15)·n/66`.
pub fn hprime_sizes(n: usize) -> Result<Vec<usize>> {
    let m = multiple_of_66(n)?;
    Ok(vec![16 * m, 4 * m, 16 * m, 15 * m, 15 * m])
}

/// K4-free, `n²/4 + n/66` edges, `2n²/33 − 7n/33` saturating pairs.
pub fn construct_h(n: usize) -> Result<Graph> {
    blowup(&BlowupPattern::new(c5_chord(), h_sizes(n)?)?)
}

/// K4-free, `n²/4` edges, contains a triangle, `2n²/33 − 3n/11` saturating pairs.
pub fn construct_hprime(n: usize) -> Result<Graph> {
    blowup(&BlowupPattern::new(c5_chord(), hprime_sizes(n)?)?)
}

/// `H(n)` with its `k` lexicographically first `V4–V5` edges removed, `0 ≤ k ≤ n/66 − 1`.
pub fn construct_h_minus(n: usize, k: usize) -> Result<Graph> {
    let sizes = h_sizes(n)?;
    let limit = n / 66 - 1;
    if k > limit {
        return Err(Error::InvalidArgument(format!("k must lie in 0..={limit} for n = {n}, got {k}")));
    }
    let bp = BlowupPattern::new(c5_chord(), sizes)?;
    let ranges = bp.part_ranges();
    let mut b = GraphBuilder::from_graph(&blowup(&bp)?);
    let v4_v5 = ranges[3].clone().flat_map(|a| ranges[4].clone().map(move |c| (a, c)));
    for (a, c) in v4_v5.take(k) {
        b.remove_edge(a, c)?;
    }
    Ok(b.build())
}

/// Two adjacent hubs `0, 1` joined to an independent set `2..n`.
pub fn bollobas_f(n: usize) -> Result<Graph> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("bollobas_F needs n >= 4, got {n}")));
    }
    let mut b = GraphBuilder::new(n)?;
    b.add_edge(0, 1)?;
    for v in 2..n {
        b.add_edge(0, v)?;
        b.add_edge(1, v)?;
    }
    Ok(b.build())
}

/// `K_{⌈n/2⌉, ⌊n/2⌋}`.
pub fn turan_bipartite(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("turan_bipartite needs n >= 1".into()));
    }
    let single_edge = Graph::complete(2)?;
    blowup(&BlowupPattern::new(single_edge, vec![n.div_ceil(2), n / 2])?)
}

/// Clique on `r − 4` apex vertices joined to every vertex of `C5` plus chord.
pub fn join_pattern_r(r: usize) -> Result<Graph> {
    if r < 4 {
        return Err(Error::InvalidArgument(format!("join pattern needs r >= 4, got {r}")));
    }
    let apexes = r - 4;
    let base = c5_chord();
    let mut b = GraphBuilder::new(apexes + base.n())?;
    for a in 0..apexes {
        for v in a + 1..apexes + base.n() {
            b.add_edge(a, v)?;
        }
    }
    for (u, v) in base.edges() {
        b.add_edge(apexes + u, apexes + v)?;
    }
    Ok(b.build())
}

/// Construction names understood by the CLI.
pub const CONSTRUCTION_NAMES: [&str; 6] = ["H", "Hprime", "Hminus", "bollobasF", "turan2", "joinpattern"];

/// Builds a named construction. `k` is used by `Hminus`, `r` by `joinpattern`.
pub fn by_name(name: &str, n: Option<usize>, k: usize, r: usize) -> Result<Graph> {
    let need_n = || n.ok_or_else(|| Error::InvalidArgument(format!("construction {name} needs --n")));
    match name {
        "H" => construct_h(need_n()?),
        "Hprime" => construct_hprime(need_n()?),
        "Hminus" => construct_h_minus(need_n()?, k),
        "bollobasF" => bollobas_f(need_n()?),
        "turan2" => turan_bipartite(need_n()?),
        "joinpattern" => join_pattern_r(r),
        _ => Err(Error::InvalidArgument(format!(
            "unknown construction {name}; expected one of {}",
            CONSTRUCTION_NAMES.join(", ")
        ))),
    }
}
