mod common;

use itertools::Itertools;
use proptest::prelude::*;
use satlab::constructions::{blowup, BlowupPattern};
use satlab::oracle::enumerate_all;
use satlab::{count_saturating, from_graph6, to_graph6, Graph, VertexSet};

use common::{has_clique, naive_saturating};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges: Vec<_> = pairs.iter().zip(&keep).filter(|p| *p.1).map(|p| *p.0).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn sparse_large_strategy() -> impl Strategy<Value = Graph> {
    (60usize..200).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..400).prop_map(move |pairs| {
            let edges: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn graph6_round_trip(g in graph_strategy(20)) {
        let text = to_graph6(&g);
        prop_assert!(text.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(from_graph6(&text).unwrap(), g);
    }

    #[test]
    fn graph6_round_trip_large(g in sparse_large_strategy()) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn complement_is_an_involution(g in graph_strategy(16)) {
        let c = g.complement();
        prop_assert_eq!(c.edge_count() + g.edge_count(), g.n() * g.n().saturating_sub(1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn saturation_matches_naive(g in graph_strategy(10), r in 3usize..=5) {
        prop_assume!(!has_clique(&g, r));
        let report = satlab::classify_nonedges(&g, r).unwrap();
        prop_assert_eq!(report.saturating_pairs().unwrap(), naive_saturating(&g, r));
        prop_assert_eq!(count_saturating(&g, r).unwrap().count, report.count);
    }

    #[test]
    fn common_neighborhood_is_an_intersection(g in graph_strategy(12), picks in proptest::collection::vec(0usize..12, 1..4)) {
        prop_assume!(g.n() > 0);
        let vs: Vec<usize> = picks.into_iter().map(|v| v % g.n()).collect();
        let set = VertexSet::from_vertices(g.n(), vs.iter().copied()).unwrap();
        let common = g.common_neighborhood(&set).unwrap();
        for w in 0..g.n() {
            prop_assert_eq!(common.contains(w), vs.iter().all(|&v| g.has_edge(v, w)));
        }
    }
}

#[test]
fn clique_check_is_exhaustive_up_to_isomorphism() {
    for n in 1..=8 {
        for e in 0..=n * (n - 1) / 2 {
            for g in enumerate_all(n, e).unwrap() {
                for r in 2..=n + 1 {
                    assert_eq!(g.max_clique_at_most(r).unwrap(), !has_clique(&g, r), "{} r={r}", to_graph6(&g));
                }
            }
        }
    }
}

#[test]
fn blowup_counts_match_part_classification() {
    let mut checked = 0;
    for k in 1..=5 {
        for e in 0..=k * (k - 1) / 2 {
            for pattern in enumerate_all(k, e).unwrap() {
                for r in [4, 5] {
                    if has_clique(&pattern, r) {
                        continue;
                    }
                    for sizes in (0..k).map(|_| 1..=3usize).multi_cartesian_product() {
                        let bp = BlowupPattern::new(pattern.clone(), sizes).unwrap();
                        let g = blowup(&bp).unwrap();
                        assert_eq!(g.edge_count(), bp.edge_count());
                        assert_eq!(count_saturating(&g, r).unwrap().count, bp.saturating_count(r), "{} {:?}", to_graph6(&pattern), bp.sizes);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 5000);
}
