//! Continuous part-density program over blow-ups of a fixed pattern.
//!
//! A weight vector `w` on the pattern vertices (non-negative, summing to 1)
//! stands for a blow-up with parts of size `w_i · n`. Edge density is
//! `Σ_{ij ∈ E} w_i w_j` and saturating density is
//! `Σ_{i ∈ within} w_i²/2 + Σ_{ij ∈ cross} w_i w_j`, where the classification
//! comes from [`classify_parts`] on the support of `w`. Both are
//! `½ wᵀ M w` for a 0/1 matrix `M`; for the saturating side `M` depends on
//! the support.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::classify_parts;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rational::{self, frac, int, Rational};

/// Weights at or below this are treated as empty parts.
pub const SUPPORT_EPS: f64 = 1e-9;

/// Lower bound on required weights during the search.
const REQUIRED_LB: f64 = 1e-6;

const MAX_PATTERN: usize = 16;

/// Slack on the floor accepted during restoration.
const FLOOR_SLACK: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            restarts: 64,
            max_iters: 3000,
            tolerance: 1e-9,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DensityProgram {
    pub pattern: Graph,
    pub r: usize,
    /// Parts forced to be non-empty. Must contain an `(r−1)`-clique unless empty.
    pub required_support: VertexSet,
    pub edge_density_floor: Rational,
    pub config: SolverConfig,
}

impl DensityProgram {
    /// Program with the default floor `(r−3)/(2(r−2))`, the edge density of
    /// the balanced complete `(r−2)`-partite graph (1/4 for `r = 4`).
    pub fn new(pattern: Graph, r: usize, required_support: VertexSet) -> Result<Self> {
        if r < 3 {
            return Err(Error::InvalidArgument(format!("r must be at least 3, got {r}")));
        }
        if pattern.n() == 0 || pattern.n() > MAX_PATTERN {
            return Err(Error::InvalidArgument(format!("pattern must have 1..={MAX_PATTERN} vertices")));
        }
        if required_support.universe() != pattern.n() {
            return Err(Error::InvalidArgument("required support is over a different vertex set".into()));
        }
        if !required_support.is_empty() && pattern.induced(&required_support).find_clique(r - 1).is_none() {
            return Err(Error::Precondition(format!("required support contains no {}-clique", r - 1)));
        }
        let floor = if r == 3 { int(0) } else { frac((r - 3) as i128, (2 * (r - 2)) as i128) };
        Ok(DensityProgram {
            pattern,
            r,
            required_support,
            edge_density_floor: floor,
            config: SolverConfig::default(),
        })
    }

    pub fn with_floor(mut self, floor: Rational) -> Self {
        self.edge_density_floor = floor;
        self
    }

    pub fn with_config(mut self, config: SolverConfig) -> Self {
        self.config = config;
        self
    }

    fn check_weights(&self, w: &[f64]) -> Result<()> {
        if w.len() != self.pattern.n() {
            return Err(Error::InvalidArgument(format!("expected {} weights, got {}", self.pattern.n(), w.len())));
        }
        if w.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
            return Err(Error::InvalidArgument("weights must be finite and non-negative".into()));
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!("weights must sum to 1, got {sum}")));
        }
        Ok(())
    }

    fn support_of(&self, w: &[f64]) -> u32 {
        w.iter().enumerate().filter(|&(_, &x)| x > SUPPORT_EPS).fold(0, |m, (i, _)| m | 1 << i)
    }

    fn required_mask(&self) -> u32 {
        self.required_support.iter().fold(0, |m, i| m | 1 << i)
    }

    fn mask_set(&self, mask: u32) -> VertexSet {
        VertexSet::from_vertices(self.pattern.n(), (0..self.pattern.n()).filter(|&i| mask >> i & 1 == 1)).expect("in range")
    }

    /// Saturating-pair matrix for a support mask.
    fn sat_matrix(&self, mask: u32) -> DMatrix<f64> {
        let n = self.pattern.n();
        let class = classify_parts(&self.pattern, &self.mask_set(mask), self.r);
        let mut q = DMatrix::zeros(n, n);
        for i in class.within {
            q[(i, i)] = 1.0;
        }
        for (i, j) in class.cross {
            q[(i, j)] = 1.0;
            q[(j, i)] = 1.0;
        }
        q
    }

    fn adjacency(&self) -> DMatrix<f64> {
        let n = self.pattern.n();
        DMatrix::from_fn(n, n, |i, j| if self.pattern.has_edge(i, j) { 1.0 } else { 0.0 })
    }
}

/// `(edge_density, sat_density)` at `w`.
pub fn evaluate_point(prog: &DensityProgram, w: &[f64]) -> Result<(f64, f64)> {
    prog.check_weights(w)?;
    let x = DVector::from_column_slice(w);
    let a = prog.adjacency();
    let q = prog.sat_matrix(prog.support_of(w));
    Ok((half_form(&a, &x), half_form(&q, &x)))
}

/// Gradients of edge and saturating density at `w`, with the classification
/// frozen at the support of `w`.
pub fn gradients(prog: &DensityProgram, w: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    prog.check_weights(w)?;
    let x = DVector::from_column_slice(w);
    let a = prog.adjacency();
    let q = prog.sat_matrix(prog.support_of(w));
    Ok(((&a * &x).iter().copied().collect(), (&q * &x).iter().copied().collect()))
}

/// Exact `(edge_density, sat_density)` at rational weights.
pub fn evaluate_exact(prog: &DensityProgram, w: &[Rational]) -> Result<(Rational, Rational)> {
    let n = prog.pattern.n();
    if w.len() != n {
        return Err(Error::InvalidArgument(format!("expected {n} weights, got {}", w.len())));
    }
    if w.iter().any(|x| *x < int(0)) || w.iter().sum::<Rational>() != int(1) {
        return Err(Error::InvalidArgument("weights must be non-negative and sum to 1".into()));
    }
    let support = VertexSet::from_vertices(n, (0..n).filter(|&i| w[i] > int(0)))?;
    let class = classify_parts(&prog.pattern, &support, prog.r);
    let edge = prog.pattern.edges().map(|(i, j)| w[i] * w[j]).sum();
    let sat = class.within.iter().map(|&i| w[i] * w[i] / int(2)).sum::<Rational>()
        + class.cross.iter().map(|&(i, j)| w[i] * w[j]).sum::<Rational>();
    Ok((edge, sat))
}

fn half_form(m: &DMatrix<f64>, x: &DVector<f64>) -> f64 {
    0.5 * x.dot(&(m * x))
}

/// `2(r−3)² / ((r−1)(4r² − 19r + 23))`.
pub fn conjecture_value(r: usize) -> Result<Rational> {
    if r < 4 {
        return Err(Error::InvalidArgument(format!("conjecture formula needs r >= 4, got {r}")));
    }
    let r = r as i128;
    Ok(frac(2 * (r - 3) * (r - 3), (r - 1) * (4 * r * r - 19 * r + 23)))
}

/// Rational point near the optimum and its exact densities.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    #[serde(serialize_with = "serialize_rationals")]
    pub weights: Vec<Rational>,
    #[serde(serialize_with = "rational::serialize")]
    pub edge_density: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub sat_density: Rational,
    /// Exact edge density is at least the floor minus `1e−9`.
    pub feasible: bool,
}

fn serialize_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub weights: Vec<f64>,
    pub edge_density: f64,
    pub sat_density: f64,
    pub converged: bool,
    pub best_over_restarts: f64,
    pub worst_over_restarts: f64,
    /// Number of local optima distinct at `1e−6`.
    pub distinct_optima: usize,
    pub restarts: usize,
    pub certificate: Option<Certificate>,
    #[serde(serialize_with = "rational::serialize_opt")]
    pub conjecture: Option<Rational>,
    /// `sat_density − conjecture`.
    pub gap: Option<f64>,
}

struct Local {
    w: Vec<f64>,
    sat: f64,
    edge: f64,
    converged: bool,
}

struct Solver<'a> {
    prog: &'a DensityProgram,
    n: usize,
    adj: DMatrix<f64>,
    floor: f64,
    lb: Vec<f64>,
    cache: HashMap<u32, DMatrix<f64>>,
}

impl<'a> Solver<'a> {
    fn new(prog: &'a DensityProgram) -> Self {
        let n = prog.pattern.n();
        let lb = (0..n).map(|i| if prog.required_support.contains(i) { REQUIRED_LB } else { 0.0 }).collect();
        Solver {
            prog,
            n,
            adj: prog.adjacency(),
            floor: rational::to_f64(&prog.edge_density_floor),
            lb,
            cache: HashMap::new(),
        }
    }

    fn q(&mut self, mask: u32) -> &DMatrix<f64> {
        let prog = self.prog;
        self.cache.entry(mask).or_insert_with(|| prog.sat_matrix(mask))
    }

    fn sat(&mut self, w: &DVector<f64>) -> f64 {
        let mask = self.prog.support_of(w.as_slice());
        half_form(self.q(mask), w)
    }

    fn edge(&self, w: &DVector<f64>) -> f64 {
        half_form(&self.adj, w)
    }

    /// Euclidean projection onto `{Σ w = 1, w ≥ lb, w_i = 0 off face}`.
    fn project(&self, y: &DVector<f64>, face: u32) -> DVector<f64> {
        let idx: Vec<usize> = (0..self.n).filter(|&i| face >> i & 1 == 1).collect();
        let budget = 1.0 - idx.iter().map(|&i| self.lb[i]).sum::<f64>();
        let v: Vec<f64> = idx.iter().map(|&i| y[i] - self.lb[i]).collect();
        let mut sorted = v.clone();
        sorted.sort_by(|a, b| b.total_cmp(a));
        let mut acc = 0.0;
        let mut theta = 0.0;
        for (j, &u) in sorted.iter().enumerate() {
            acc += u;
            let t = (acc - budget) / (j + 1) as f64;
            if u - t > 0.0 {
                theta = t;
            }
        }
        let mut out = DVector::zeros(self.n);
        for (k, &i) in idx.iter().enumerate() {
            out[i] = self.lb[i] + (v[k] - theta).max(0.0);
        }
        out
    }

    /// Newton steps on the scalar constraint along the edge gradient,
    /// centered on `region`, until `y` meets the floor.
    fn restore(&self, mut y: DVector<f64>, region: u32) -> Option<DVector<f64>> {
        let target = self.floor - FLOOR_SLACK;
        let idx: Vec<usize> = (0..self.n).filter(|&i| region >> i & 1 == 1).collect();
        for _ in 0..200 {
            let deficit = target - self.edge(&y);
            if deficit <= 0.0 {
                return Some(y);
            }
            let g = &self.adj * &y;
            let mean = idx.iter().map(|&i| g[i]).sum::<f64>() / idx.len() as f64;
            let mut d = DVector::zeros(self.n);
            for &i in &idx {
                d[i] = g[i] - mean;
            }
            let nn = d.norm_squared();
            if nn < 1e-300 {
                return None;
            }
            y = self.project(&(&y + d * (deficit / nn)), region);
        }
        None
    }

    /// Saturating gradient centered on `region`; on the floor, with the
    /// component that would lower the edge density removed.
    fn direction(&mut self, w: &DVector<f64>, mask: u32, region: u32) -> DVector<f64> {
        let idx: Vec<usize> = (0..self.n).filter(|&i| region >> i & 1 == 1).collect();
        let center = |v: DVector<f64>| {
            let mean = idx.iter().map(|&i| v[i]).sum::<f64>() / idx.len() as f64;
            DVector::from_fn(v.len(), |i, _| if region >> i & 1 == 1 { v[i] - mean } else { 0.0 })
        };
        let g = center(self.q(mask) * w);
        if self.edge(w) > self.floor + 1e-9 {
            return g;
        }
        let a = center(&self.adj * w);
        let (ga, aa) = (g.dot(&a), a.norm_squared());
        if ga > 0.0 && aa > 1e-300 {
            g - a * (ga / aa)
        } else {
            g
        }
    }

    /// Projected gradient descent on the saturating density, restoring
    /// feasibility after every step. Steps that would switch on new parts
    /// and fail to decrease are retried on the current face.
    fn descend(&mut self, start: Vec<f64>, observe: &(dyn Fn(&[f64]) + Sync)) -> Option<Local> {
        let full = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
        let tol = self.prog.config.tolerance;
        let mut w = self.restore(self.project(&DVector::from_vec(start), full), full)?;
        observe(w.as_slice());
        let mut step = 1.0;
        let mut converged = false;
        for _ in 0..self.prog.config.max_iters {
            let f = self.sat(&w);
            let mask = self.prog.support_of(w.as_slice());
            let mut next = None;
            'faces: for region in [full, mask] {
                let g = self.direction(&w, mask, region);
                let mut t = step;
                while t > 1e-14 {
                    if let Some(y) = self.restore(self.project(&(&w - &g * t), region), region) {
                        if self.sat(&y) < f - 1e-16 {
                            step = (t * 2.0).min(1e4);
                            next = Some(y);
                            break 'faces;
                        }
                    }
                    t *= 0.5;
                }
            }
            let Some(y) = next else {
                converged = true;
                break;
            };
            let moved = (&y - &w).amax();
            let gain = f - self.sat(&y);
            w = y;
            observe(w.as_slice());
            if moved < tol || gain < 1e-14 {
                converged = true;
                break;
            }
        }
        Some(Local {
            edge: self.edge(&w),
            sat: self.sat(&w),
            w: w.iter().copied().collect(),
            converged,
        })
    }

    /// Newton on the KKT system of the program restricted to `mask`, with the
    /// floor as an equality when `active`.
    fn kkt(&mut self, start: &[f64], mask: u32, active: bool) -> Option<Vec<f64>> {
        let idx: Vec<usize> = (0..self.n).filter(|&i| mask >> i & 1 == 1).collect();
        let m = idx.len();
        let q_full = self.q(mask).clone();
        let q = DMatrix::from_fn(m, m, |a, b| q_full[(idx[a], idx[b])]);
        let a = DMatrix::from_fn(m, m, |x, y| self.adj[(idx[x], idx[y])]);
        let mut w = DVector::from_fn(m, |k, _| start[idx[k]]);
        let s: f64 = w.sum();
        w /= s;
        let ones = DVector::from_element(m, 1.0);
        let (mut lambda, mut nu) = {
            let qw = &q * &w;
            let basis = DMatrix::from_columns(&[&a * &w, ones.clone()]);
            let cols = if active { basis } else { basis.columns(1, 1).into_owned() };
            let sol = cols.clone().svd(true, true).solve(&qw, 1e-12).ok()?;
            if active {
                (sol[0], sol[1])
            } else {
                (0.0, sol[0])
            }
        };
        let dim = m + 1 + usize::from(active);
        for _ in 0..60 {
            let aw = &a * &w;
            let grad = &q * &w - &aw * lambda - &ones * nu;
            let mut res = DVector::zeros(dim);
            res.rows_mut(0, m).copy_from(&grad);
            res[m] = w.sum() - 1.0;
            if active {
                res[m + 1] = 0.5 * w.dot(&aw) - self.floor;
            }
            if res.amax() < 1e-15 {
                break;
            }
            let mut jac = DMatrix::zeros(dim, dim);
            jac.view_mut((0, 0), (m, m)).copy_from(&(&q - &a * lambda));
            for k in 0..m {
                jac[(k, m)] = -1.0;
                jac[(m, k)] = 1.0;
                if active {
                    jac[(k, m + 1)] = -aw[k];
                    jac[(m + 1, k)] = aw[k];
                }
            }
            let delta = jac.svd(true, true).solve(&(-res), 1e-14).ok()?;
            w += delta.rows(0, m);
            nu += delta[m];
            if active {
                lambda += delta[m + 1];
            }
        }
        let mut out = vec![0.0; self.n];
        for (k, &i) in idx.iter().enumerate() {
            if !(w[k] > SUPPORT_EPS) {
                return None;
            }
            out[i] = w[k];
        }
        Some(out)
    }

    /// Re-solves on the detected support; keeps the better feasible point.
    fn polish(&mut self, local: Local) -> Local {
        let required = self.prog.required_mask();
        let loose = self.prog.support_of(&local.w);
        let tight = local.w.iter().enumerate().filter(|&(_, &x)| x > 1e-4).fold(required, |m, (i, _)| m | 1 << i);
        let mut best = local;
        let slack_tol = self.prog.config.tolerance;
        for mask in [loose, tight] {
            if mask & required != required {
                continue;
            }
            for active in [true, false] {
                let Some(w) = self.kkt(&best.w, mask, active) else { continue };
                let x = DVector::from_column_slice(&w);
                let edge = half_form(&self.adj, &x);
                if edge < self.floor - 1e-12 || self.prog.support_of(&w) != mask {
                    continue;
                }
                let sat = half_form(self.q(mask), &x);
                let best_feasible = best.edge >= self.floor - slack_tol;
                if !best_feasible || sat <= best.sat + slack_tol {
                    best = Local {
                        w,
                        sat,
                        edge,
                        converged: true,
                    };
                }
            }
        }
        best
    }
}

/// Best rational approximation by continued fractions, denominator at most `max_den`.
fn rationalize(x: f64, max_den: i128, tol: f64) -> Rational {
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut y = x;
    loop {
        let a = y.floor();
        let (p2, q2) = (a as i128 * p1 + p0, a as i128 * q1 + q0);
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        if (x - p1 as f64 / q1 as f64).abs() <= tol || y - a < 1e-15 {
            break;
        }
        y = 1.0 / (y - a);
    }
    if q1 == 0 {
        return int(x.round() as i128);
    }
    frac(p1, q1)
}

fn certify(prog: &DensityProgram, w: &[f64]) -> Option<Certificate> {
    const MAX_DEN: i128 = 1_000_000;
    let approx: Vec<Rational> = w.iter().map(|&x| rationalize(x, MAX_DEN, 1e-10)).collect();
    let common = approx.iter().try_fold(1i128, |acc, r| Some(acc.lcm(r.denom())).filter(|&l| l <= MAX_DEN));
    let den = common.unwrap_or(MAX_DEN);
    let mut rw: Vec<Rational> = w.iter().map(|&x| frac((x * den as f64).round() as i128, den)).collect();
    let (big, _) = w.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1))?;
    let rest: Rational = rw.iter().enumerate().filter(|&(i, _)| i != big).map(|(_, x)| *x).sum();
    rw[big] = int(1) - rest;
    if rw[big] < int(0) {
        return None;
    }
    let (edge, sat) = evaluate_exact(prog, &rw).ok()?;
    Some(Certificate {
        feasible: edge >= prog.edge_density_floor - frac(1, 1_000_000_000),
        weights: rw,
        edge_density: edge,
        sat_density: sat,
    })
}

fn clique_number(g: &Graph) -> usize {
    (1..=g.n()).take_while(|&k| g.find_clique(k).is_some()).last().unwrap_or(0)
}

/// Minimizes saturating density subject to the edge-density floor.
pub fn optimize(prog: &DensityProgram) -> Result<OptimizationResult> {
    optimize_observed(prog, &|_| {})
}

/// As [`optimize`], calling `observe` on every accepted descent iterate.
pub fn optimize_observed(prog: &DensityProgram, observe: &(dyn Fn(&[f64]) + Sync)) -> Result<OptimizationResult> {
    let n = prog.pattern.n();
    let omega = clique_number(&prog.pattern);
    let max_edge = 0.5 * (1.0 - 1.0 / omega.max(1) as f64);
    let floor = rational::to_f64(&prog.edge_density_floor);
    if max_edge < floor - 1e-12 {
        return Err(Error::Infeasible { max_edge_density: max_edge });
    }
    let restarts = prog.config.restarts.max(1);
    let locals: Vec<Local> = (0..restarts)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(prog.config.seed.wrapping_add(k as u64));
            // Normalized exponentials: uniform on the simplex, Dirichlet(1, ..., 1).
            let draws: Vec<f64> = (0..n).map(|_| Exp1.sample(&mut rng)).collect();
            let total: f64 = draws.iter().sum();
            let start = draws.iter().map(|x| x / total).collect();
            let mut solver = Solver::new(prog);
            let local = solver.descend(start, observe)?;
            Some(solver.polish(local))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    if locals.is_empty() {
        return Err(Error::Infeasible { max_edge_density: max_edge });
    }
    let tol = prog.config.tolerance;
    let feasible: Vec<&Local> = locals.iter().filter(|l| l.edge >= floor - tol).collect();
    let pool = if feasible.is_empty() { locals.iter().collect() } else { feasible };
    let best = *pool.iter().min_by(|a, b| a.sat.total_cmp(&b.sat)).expect("at least one restart");
    let worst = pool.iter().map(|l| l.sat).fold(f64::NEG_INFINITY, f64::max);
    let mut values: Vec<f64> = pool.iter().map(|l| l.sat).collect();
    values.sort_by(f64::total_cmp);
    values.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
    let conjecture = conjecture_value(prog.r).ok();
    Ok(OptimizationResult {
        weights: best.w.clone(),
        edge_density: best.edge,
        sat_density: best.sat,
        converged: best.converged && best.edge >= floor - tol,
        best_over_restarts: best.sat,
        worst_over_restarts: worst,
        distinct_optima: values.len(),
        restarts,
        certificate: certify(prog, &best.w),
        gap: conjecture.map(|c| best.sat - rational::to_f64(&c)),
        conjecture,
    })
}

/// Automorphisms of a small pattern as vertex maps.
pub fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let v = map.len();
        if v == g.n() {
            out.push(map.clone());
            return;
        }
        for image in 0..g.n() {
            if used[image] || g.degree(image) != g.degree(v) {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == g.has_edge(map[u], image)) {
                used[image] = true;
                map.push(image);
                extend(g, map, used, out);
                map.pop();
                used[image] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(g, &mut Vec::with_capacity(g.n()), &mut vec![false; g.n()], &mut out);
    out
}

/// Image of `weights` under the automorphism that brings it closest to `reference` in max norm.
pub fn align_weights(pattern: &Graph, weights: &[f64], reference: &[f64]) -> Vec<f64> {
    automorphisms(pattern)
        .into_iter()
        .map(|sigma| {
            let mut out = vec![0.0; weights.len()];
            for (v, &img) in sigma.iter().enumerate() {
                out[img] = weights[v];
            }
            out
        })
        .min_by(|a, b| max_diff(a, reference).total_cmp(&max_diff(b, reference)))
        .unwrap_or_else(|| weights.to_vec())
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::c5_chord;

    fn c5_program() -> DensityProgram {
        let support = VertexSet::from_vertices(5, [0, 1, 2]).unwrap();
        DensityProgram::new(c5_chord(), 4, support).unwrap()
    }

    #[test]
    fn conjecture_values() {
        assert_eq!(conjecture_value(4).unwrap(), frac(2, 33));
        assert_eq!(conjecture_value(5).unwrap(), frac(1, 14));
        assert_eq!(conjecture_value(6).unwrap(), frac(18, 265));
        assert!(conjecture_value(3).is_err());
    }

    #[test]
    fn h_weights_evaluate_exactly() {
        let prog = c5_program();
        let w: Vec<Rational> = [16, 4, 16, 15, 15].iter().map(|&x| frac(x, 66)).collect();
        assert_eq!(evaluate_exact(&prog, &w).unwrap(), (frac(1, 4), frac(2, 33)));
        let wf: Vec<f64> = w.iter().map(rational::to_f64).collect();
        let (e, s) = evaluate_point(&prog, &wf).unwrap();
        assert!((e - 0.25).abs() < 1e-15 && (s - 2.0 / 33.0).abs() < 1e-15);
        assert_eq!(evaluate_point(&prog, &[1.0, 0.0, 0.0, 0.0, 0.0]).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn rejects_bad_weights() {
        let prog = c5_program();
        assert!(evaluate_point(&prog, &[0.5, 0.5, 0.5, -0.5, 0.0]).is_err());
        assert!(evaluate_point(&prog, &[0.5, 0.0, 0.0, 0.0, 0.0]).is_err());
        assert!(evaluate_point(&prog, &[1.0]).is_err());
    }

    #[test]
    fn required_support_needs_a_clique() {
        let s = VertexSet::from_vertices(5, [0, 3]).unwrap();
        assert!(matches!(DensityProgram::new(c5_chord(), 4, s), Err(Error::Precondition(_))));
    }

    #[test]
    fn infeasible_floor_is_reported() {
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let prog = DensityProgram::new(edge, 4, VertexSet::empty(2)).unwrap().with_floor(frac(1, 3));
        assert_eq!(optimize(&prog), Err(Error::Infeasible { max_edge_density: 0.25 }));
    }

    #[test]
    fn rationalize_recovers_small_fractions() {
        assert_eq!(rationalize(16.0 / 66.0, 1_000_000, 1e-10), frac(8, 33));
        assert_eq!(rationalize(0.0, 1_000_000, 1e-10), int(0));
        assert_eq!(rationalize(1.0, 1_000_000, 1e-10), int(1));
    }

    #[test]
    fn c5_chord_has_two_automorphisms() {
        let auts = automorphisms(&c5_chord());
        assert_eq!(auts.len(), 2);
        assert!(auts.contains(&vec![2, 1, 0, 4, 3]));
    }
}
