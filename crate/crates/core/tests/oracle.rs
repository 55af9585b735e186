mod common;

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use satlab::oracle::{canonical_form, enumerate_all, enumerate_by_dedup, enumerate_k4free, f_table};
use satlab::{count_saturating, Graph};

use common::{has_clique, naive_saturating, random_k4free};

/// min f over every labelled K4-free graph on `n` vertices, keyed by edge count.
fn labelled_minima(n: usize) -> HashMap<usize, usize> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let mut best = HashMap::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if has_clique(&g, 4) {
            continue;
        }
        let f = naive_saturating(&g, 4).len();
        best.entry(edges.len()).and_modify(|b: &mut usize| *b = (*b).min(f)).or_insert(f);
    }
    best
}

#[test]
fn f_table_matches_labelled_brute_force() {
    for n in 4..=6 {
        let minima = labelled_minima(n);
        for e in 0..=n * (n - 1) / 2 {
            match minima.get(&e) {
                Some(&f) => assert_eq!(f_table(n, e).unwrap().f_min, f, "n={n} e={e}"),
                None => assert!(f_table(n, e).is_err(), "n={n} e={e}"),
            }
        }
    }
}

#[test]
fn frozen_values() {
    assert_eq!(f_table(4, 5).unwrap().f_min, 1);
    assert_eq!(f_table(5, 7).unwrap().f_min, 1);
    assert_eq!(f_table(6, 10).unwrap().f_min, 1);
}

fn is_bipartite(g: &Graph) -> bool {
    let n = g.n();
    let mut side = vec![None; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut queue = vec![s];
        while let Some(u) = queue.pop() {
            for v in 0..n {
                if g.has_edge(u, v) {
                    match side[v] {
                        None => {
                            side[v] = Some(!side[u].unwrap());
                            queue.push(v);
                        }
                        Some(c) if c == side[u].unwrap() => return false,
                        _ => {}
                    }
                }
            }
        }
    }
    true
}

#[test]
fn turan_edge_count_is_free() {
    for n in 4..=8 {
        let rec = f_table(n, n * n / 4).unwrap();
        assert_eq!(rec.f_min, 0);
        assert_eq!(rec.witness.edge_count(), n * n / 4);
        assert!(is_bipartite(&rec.witness));
    }
}

#[test]
fn witness_invariants() {
    for (n, e) in [(5, 7), (6, 10), (7, 13)] {
        let rec = f_table(n, e).unwrap();
        assert_eq!(rec.witness.edge_count(), e);
        assert!(!has_clique(&rec.witness, 4));
        assert_eq!(count_saturating(&rec.witness, 4).unwrap().count, rec.f_min);
        for g in enumerate_k4free(n, e).unwrap() {
            assert!(count_saturating(&g, 4).unwrap().count >= rec.f_min);
        }
    }
}

#[test]
fn all_four_vertex_graphs_have_eleven_forms() {
    let pairs: Vec<(usize, usize)> = (0..4).tuple_combinations().collect();
    let forms: BTreeSet<_> = (0u32..64)
        .map(|mask| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            canonical_form(&Graph::from_edges(4, &edges).unwrap()).unwrap()
        })
        .collect();
    assert_eq!(forms.len(), 11);
}

#[test]
fn class_counts() {
    let total = |n: usize, forbid: bool| -> usize {
        (0..=n * (n - 1) / 2)
            .map(|e| if forbid { enumerate_k4free(n, e).unwrap().count() } else { enumerate_all(n, e).unwrap().count() })
            .sum()
    };
    assert_eq!(total(4, false), 11);
    assert_eq!(total(5, false), 34);
    assert_eq!(total(6, false), 156);
    assert_eq!([4, 5, 6, 7].map(|n| total(n, true)), [10, 29, 120, 685]);
}

#[test]
fn orderly_agrees_with_dedup_fallback() {
    for n in 1..=6 {
        for e in 0..=n * (n - 1) / 2 {
            for forbid in [true, false] {
                let orderly: BTreeSet<_> = if forbid { enumerate_k4free(n, e) } else { enumerate_all(n, e) }
                    .unwrap()
                    .map(|g| canonical_form(&g).unwrap())
                    .collect();
                let dedup: BTreeSet<_> = enumerate_by_dedup(n, e, forbid).unwrap().iter().map(|g| canonical_form(g).unwrap()).collect();
                assert_eq!(orderly, dedup, "n={n} e={e} forbid={forbid}");
            }
        }
    }
}

#[test]
fn counter_matches_naive_on_every_small_class() {
    for n in 1..=6 {
        for e in 0..=n * (n - 1) / 2 {
            for g in enumerate_k4free(n, e).unwrap() {
                let report = satlab::classify_nonedges(&g, 4).unwrap();
                let fast = report.saturating_pairs().unwrap();
                assert_eq!(fast, naive_saturating(&g, 4));
            }
        }
    }
}

#[test]
fn counter_matches_naive_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..200 {
        let n = 4 + i % 6;
        let g = random_k4free(&mut rng, n, 0.7);
        assert_eq!(count_saturating(&g, 4).unwrap().count, naive_saturating(&g, 4).len());
    }
}
