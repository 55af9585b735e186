//! Triangle-packing decomposition of a K4-free graph and the inequality
//! audits built on it.
//!
//! Given a packing `𝒯`, `G′ = G − V(𝒯)`. Saturating pairs split into `r1`
//! (at least one endpoint in `V(𝒯)`) and `r2` (both endpoints in `G′`). For a
//! triangle `T = {x, y, z}` of the packing, `N_j(T)` is the set of `G′`
//! vertices with exactly `j` neighbors on `T`, and `A`, `B`, `C` are the
//! `G′`-common neighborhoods of `xy`, `yz`, `xz`.
//!
//! All quantities are exact integers or rationals.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::packing::{max_triangle_packing_with, PackingOptions, Triangle, TrianglePacking};
use crate::rational::{self, choose2, frac, int, Rational};
use crate::saturation::classify_nonedges;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub n: usize,
    pub e: usize,
    /// `|𝒯| / n`.
    #[serde(serialize_with = "rational::serialize")]
    pub t: Rational,
    pub triangles: usize,
    /// Edges inside `V(𝒯)`.
    pub e_t: usize,
    /// Edges of `G′`.
    pub e_gprime: usize,
    /// Edges between `V(𝒯)` and `V(G′)`.
    pub e_cross: usize,
    /// `t_i = e(T_i, G ∖ ⋃_{j ≤ i} T_j)` in packing order.
    pub t_i: Vec<usize>,
    pub r1: usize,
    pub r2: usize,
    pub f: usize,
}

pub fn decompose(g: &Graph, packing: &TrianglePacking) -> Result<DecompositionReport> {
    packing.validate(g)?;
    let n = g.n();
    let covered = packing.covered(n);
    let rest = VertexSet::full(n).difference(&covered);

    let mut later = VertexSet::full(n);
    let t_i = packing
        .triangles
        .iter()
        .map(|t| {
            for &v in t {
                later.remove(v);
            }
            let tri = VertexSet::from_vertices(n, t.iter().copied()).expect("validated");
            g.edges_between(&tri, &later)
        })
        .collect();

    let sat = classify_nonedges(g, 4)?;
    let pairs = sat.saturating_pairs().expect("classification requested");
    let r1 = pairs.iter().filter(|&&(u, v)| covered.contains(u) || covered.contains(v)).count();

    Ok(DecompositionReport {
        n,
        e: g.edge_count(),
        t: frac(packing.len() as i128, n.max(1) as i128),
        triangles: packing.len(),
        e_t: g.edges_within(&covered),
        e_gprime: g.edges_within(&rest),
        e_cross: g.edges_between(&covered, &rest),
        t_i,
        r1,
        r2: pairs.len() - r1,
        f: pairs.len(),
    })
}

/// Neighborhood statistics of one packed triangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleAnalysis {
    pub triangle: Triangle,
    pub n0: VertexSetList,
    pub n1: VertexSetList,
    pub n2: VertexSetList,
    #[serde(serialize_with = "rational::serialize")]
    pub p0: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub p1: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub p2: Rational,
    /// `N_{G′}(xy)`.
    pub a_set: VertexSetList,
    /// `N_{G′}(yz)`.
    pub b_set: VertexSetList,
    /// `N_{G′}(xz)`.
    pub c_set: VertexSetList,
    /// `|A| / |N2|`, unset when `N2` is empty; likewise `b`, `c`.
    #[serde(serialize_with = "rational::serialize_opt")]
    pub a: Option<Rational>,
    #[serde(serialize_with = "rational::serialize_opt")]
    pub b: Option<Rational>,
    #[serde(serialize_with = "rational::serialize_opt")]
    pub c: Option<Rational>,
    pub nx: VertexSetList,
    pub ny: VertexSetList,
    pub nz: VertexSetList,
    /// `e(T, G′) = |N1| + 2|N2|`.
    pub e_to_gprime: usize,
    /// Number of nonempty sets among `A`, `B`, `C`.
    pub joint_book_k: usize,
}

/// Sorted vertex list, the serialized form of a vertex set.
pub type VertexSetList = Vec<usize>;

pub fn analyze_triangle(g: &Graph, packing: &TrianglePacking, which: usize) -> Result<TriangleAnalysis> {
    packing.validate(g)?;
    let Some(&triangle) = packing.triangles.get(which) else {
        return Err(Error::InvalidArgument(format!(
            "triangle index {which} out of range for a packing of {}",
            packing.len()
        )));
    };
    let n = g.n();
    let rest = VertexSet::full(n).difference(&packing.covered(n));
    let [x, y, z] = triangle;
    let nx = g.neighbors(x).intersection(&rest);
    let ny = g.neighbors(y).intersection(&rest);
    let nz = g.neighbors(z).intersection(&rest);

    let mut levels = [Vec::new(), Vec::new(), Vec::new()];
    for v in rest.iter() {
        let k = [&nx, &ny, &nz].iter().filter(|s| s.contains(v)).count();
        if k == 3 {
            return Err(Error::CliqueFound {
                r: 4,
                witness: {
                    let mut w = vec![x, y, z, v];
                    w.sort_unstable();
                    w
                },
            });
        }
        levels[k].push(v);
    }
    let [n0, n1, n2] = levels;
    let a_set = nx.intersection(&ny).to_vec();
    let b_set = ny.intersection(&nz).to_vec();
    let c_set = nx.intersection(&nz).to_vec();
    let share = |s: &Vec<usize>| (!n2.is_empty()).then(|| frac(s.len() as i128, n2.len() as i128));
    let p = |s: &Vec<usize>| frac(s.len() as i128, n as i128);
    Ok(TriangleAnalysis {
        triangle,
        p0: p(&n0),
        p1: p(&n1),
        p2: p(&n2),
        a: share(&a_set),
        b: share(&b_set),
        c: share(&c_set),
        joint_book_k: [&a_set, &b_set, &c_set].iter().filter(|s| !s.is_empty()).count(),
        e_to_gprime: n1.len() + 2 * n2.len(),
        a_set,
        b_set,
        c_set,
        n0,
        n1,
        n2,
        nx: nx.to_vec(),
        ny: ny.to_vec(),
        nz: nz.to_vec(),
    })
}

/// Index of the packed triangle sending the most edges to `G′`; ties go to the smallest index.
pub fn select_best_triangle(g: &Graph, packing: &TrianglePacking) -> Result<usize> {
    packing.validate(g)?;
    if packing.is_empty() {
        return Err(Error::InvalidArgument("cannot select a triangle from an empty packing".into()));
    }
    let n = g.n();
    let rest = VertexSet::full(n).difference(&packing.covered(n));
    let sends = |t: &Triangle| -> usize { t.iter().map(|&v| g.neighbors(v).intersection(&rest).len()).sum() };
    let mut best = 0;
    let mut best_value = sends(&packing.triangles[0]);
    for (i, t) in packing.triangles.iter().enumerate().skip(1) {
        let value = sends(t);
        if value > best_value {
            best = i;
            best_value = value;
        }
    }
    Ok(best)
}

/// One audited inequality `left ≥ right`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaAudit {
    pub name: String,
    #[serde(serialize_with = "rational::serialize")]
    pub left: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub right: Rational,
    pub holds: bool,
    #[serde(serialize_with = "rational::serialize")]
    pub slack: Rational,
}

impl LemmaAudit {
    fn new(name: &str, left: Rational, right: Rational) -> Self {
        let slack = left - right;
        LemmaAudit {
            name: name.to_string(),
            left,
            right,
            holds: slack >= int(0),
            slack,
        }
    }
}

/// Decomposition, selected triangle and audits, in the order they are serialized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    #[serde(serialize_with = "rational::serialize")]
    pub t: Rational,
    pub e_gprime: usize,
    pub r1: usize,
    pub r2: usize,
    pub f: usize,
    pub packing: Vec<Triangle>,
    pub selected: usize,
    pub joint_book_k: usize,
    pub audits: Vec<LemmaAudit>,
    #[serde(skip)]
    pub decomposition: DecompositionReport,
    #[serde(skip)]
    pub analysis: TriangleAnalysis,
}

impl AuditReport {
    pub fn all_hold(&self) -> bool {
        self.audits.iter().all(|a| a.holds)
    }

    pub fn audit(&self, name: &str) -> Option<&LemmaAudit> {
        self.audits.iter().find(|a| a.name == name)
    }
}

fn check_audit_hypotheses(g: &Graph) -> Result<()> {
    if let Some(witness) = g.find_clique(4) {
        return Err(Error::CliqueFound { r: 4, witness });
    }
    let n = g.n();
    if g.edge_count() != n * n / 4 {
        return Err(Error::Precondition(format!(
            "e = {} but the audits need e = floor(n^2/4) = {}",
            g.edge_count(),
            n * n / 4
        )));
    }
    if !g.contains_triangle() {
        return Err(Error::NoTriangle);
    }
    Ok(())
}

/// Audits with an exact packing computed here; needs `n ≤ opts.exact_limit`.
pub fn audit_lemmas(g: &Graph, opts: PackingOptions) -> Result<AuditReport> {
    check_audit_hypotheses(g)?;
    if g.n() > opts.exact_limit {
        return Err(Error::Precondition(format!(
            "n = {} exceeds the exact packing limit {}; raise the limit or supply an exact packing",
            g.n(),
            opts.exact_limit
        )));
    }
    let packing = max_triangle_packing_with(g, opts)?;
    audit_lemmas_with_packing(g, &packing)
}

/// Audits against a caller-supplied packing, which must be marked exact.
pub fn audit_lemmas_with_packing(g: &Graph, packing: &TrianglePacking) -> Result<AuditReport> {
    check_audit_hypotheses(g)?;
    if !packing.exact {
        return Err(Error::Precondition("the audits need a maximum packing; heuristic packings are rejected".into()));
    }
    let report = decompose(g, packing)?;
    let selected = select_best_triangle(g, packing)?;
    let analysis = analyze_triangle(g, packing, selected)?;

    let n = int(g.n() as i128);
    let s = int(packing.len() as i128);
    let t = report.t;
    let e = int(report.e as i128);
    let e_gprime = int(report.e_gprime as i128);
    let rest = n - int(3) * s;

    let mut audits = Vec::new();
    // r1 ≥ Σ (t_i − (n − 3i)) = e − e(G′) − s·n + 3s(s − 1)/2
    let l1_right = e - e_gprime - s * n + int(3) * s * (s - int(1)) / int(2);
    audits.push(LemmaAudit::new("L1", int(report.r1 as i128), l1_right));

    // averaging e(𝒯, G′) ≥ e − (n − 3s)²/4 − 3s² over the s triangles;
    // for even n this is (3/2 − 21t/4)·n
    let l2_right = (e - rest * rest / int(4) - int(3) * s * s) / s;
    let e_tg = int(analysis.e_to_gprime as i128);
    audits.push(LemmaAudit::new("L2(i)", e_tg, l2_right));
    let l2ii_right = l2_right / n - (int(1) - int(3) * t) + analysis.p0;
    audits.push(LemmaAudit::new("L2(ii)", analysis.p2, l2ii_right));

    let r2 = int(report.r2 as i128);
    if analysis.joint_book_k == 3 {
        let complement_gprime = choose2(rest) - e_gprime;
        let l3_right = l2_right * l2_right / int(6) - complement_gprime - rest;
        audits.push(LemmaAudit::new("L3", r2, l3_right));
    } else {
        // with one of A, B, C empty, the pairs inside the other two saturate
        let sets = [&analysis.a_set, &analysis.b_set, &analysis.c_set];
        let empty = sets.iter().position(|s| s.is_empty()).expect("k <= 2");
        let eq1_right = sets
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != empty)
            .map(|(_, s)| choose2(int(s.len() as i128)))
            .sum::<Rational>();
        audits.push(LemmaAudit::new("Eq1", r2, eq1_right));
    }

    let t2_right = int(2) * n * n / int(33) - int(3) * n / int(11);
    audits.push(LemmaAudit::new("T2", int(report.f as i128), t2_right));

    Ok(AuditReport {
        t: report.t,
        e_gprime: report.e_gprime,
        r1: report.r1,
        r2: report.r2,
        f: report.f,
        packing: packing.triangles.clone(),
        selected,
        joint_book_k: analysis.joint_book_k,
        audits,
        decomposition: report,
        analysis,
    })
}

/// Removes the lexicographically first edge whose removal leaves a triangle.
pub fn reduce_preserving_triangle(g: &Graph) -> Result<Graph> {
    if !g.contains_triangle() {
        return Err(Error::NoTriangle);
    }
    for (u, v) in g.edges() {
        let h = g.without_edge(u, v)?;
        if h.contains_triangle() {
            return Ok(h);
        }
    }
    Err(Error::Precondition("every edge removal destroys the last triangle".into()))
}
