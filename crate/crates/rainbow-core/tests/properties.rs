//! Randomized invariants: graph primitives against small independent oracles,
//! and the state-search verifier against plain path enumeration.

use proptest::prelude::*;
use rainbow_core::graph::forest_bipartition;
use rainbow_core::io::{parse_coloring, parse_graph, write_coloring, write_graph};
use rainbow_core::reference::rainbow_connected_by_enumeration;
use rainbow_core::{rainbow_connected, ColorSet, EdgeColoring, EdgeId, Graph, VerifyOptions};
use std::collections::BTreeSet;

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect()
}

fn arb_connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = all_pairs(n);
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_filter_map(
            "graph must be connected",
            move |mask| {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .zip(&mask)
                    .filter(|(_, &keep)| keep)
                    .map(|(&e, _)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges);
                g.is_connected().then_some(g)
            },
        )
    })
}

fn arb_colored_graph(max_n: usize, max_color: u32) -> impl Strategy<Value = (Graph, EdgeColoring)> {
    arb_connected_graph(max_n).prop_flat_map(move |g| {
        let edges: Vec<EdgeId> = g.edges().to_vec();
        proptest::collection::vec(1..=max_color, edges.len()).prop_map(move |colors| {
            let mut coloring =
                EdgeColoring::from_entries(edges.iter().copied().zip(colors.iter().copied()));
            coloring.set_k(max_color);
            (g.clone(), coloring)
        })
    })
}

proptest! {
    #[test]
    fn radius_and_diameter_bound_each_other(g in arb_connected_graph(8)) {
        let m = g.metrics().unwrap();
        prop_assert!(m.radius <= m.diameter);
        prop_assert!(m.diameter <= 2 * m.radius);
        prop_assert!(!m.centers.is_empty());
        for &c in &m.centers {
            prop_assert_eq!(m.eccentricity[c], m.radius);
        }
    }

    #[test]
    fn bridges_match_the_removal_oracle(g in arb_connected_graph(8)) {
        let reported: BTreeSet<EdgeId> = g.find_bridges().into_iter().collect();
        for &e in g.edges() {
            let remaining: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .filter(|&&f| f != e)
                .map(|f| f.endpoints())
                .collect();
            let disconnects = !Graph::from_edges(g.n(), &remaining).is_connected();
            prop_assert_eq!(reported.contains(&e), disconnects);
        }
    }

    #[test]
    fn triangle_free_edges_match_the_common_neighbor_check(g in arb_connected_graph(8)) {
        let reported: BTreeSet<EdgeId> = g.triangle_free_edges().into_iter().collect();
        for &e in g.edges() {
            let (a, b) = e.endpoints();
            let in_triangle = g.neighbors(a).intersection(g.neighbors(b)).next().is_some();
            prop_assert_eq!(reported.contains(&e), !in_triangle);
        }
    }

    #[test]
    fn forest_bipartition_is_proper_and_spanning(g in arb_connected_graph(8)) {
        let s: BTreeSet<usize> = (0..g.n()).collect();
        let bip = forest_bipartition(&g, &s).unwrap();
        prop_assert!(bip.part_x.is_disjoint(&bip.part_y));
        let covered: BTreeSet<usize> = bip.part_x.union(&bip.part_y).copied().collect();
        prop_assert_eq!(covered, s);
        prop_assert_eq!(bip.forest.len(), g.n() - 1);
        for e in &bip.forest {
            prop_assert!(g.edges().contains(e));
            let (a, b) = e.endpoints();
            prop_assert!(bip.part_x.contains(&a) != bip.part_x.contains(&b));
        }
    }

    #[test]
    fn verifier_matches_path_enumeration(
        (g, coloring) in arb_colored_graph(7, 4)
    ) {
        let expected = rainbow_connected_by_enumeration(&g, &coloring);
        let serial = rainbow_connected(&g, &coloring, &VerifyOptions::default()).unwrap();
        prop_assert_eq!(serial.rainbow_connected, expected);
        let parallel_options = VerifyOptions {
            parallel: true,
            ..Default::default()
        };
        let parallel = rainbow_connected(&g, &coloring, &parallel_options).unwrap();
        prop_assert_eq!(parallel.rainbow_connected, expected);
        prop_assert_eq!(parallel.witness, serial.witness);
    }

    #[test]
    fn widening_the_allowed_set_never_breaks_connection(
        (g, coloring) in arb_colored_graph(7, 4),
        narrow_mask in proptest::collection::vec(any::<bool>(), 4),
    ) {
        let narrow_colors: Vec<u32> = (1..=4u32)
            .zip(&narrow_mask)
            .filter(|(_, &keep)| keep)
            .map(|(c, _)| c)
            .collect();
        let narrow = ColorSet::from_colors(&narrow_colors);
        let wide = ColorSet::all_up_to(4);
        let check = |allowed: ColorSet| {
            let options = VerifyOptions {
                allowed: Some(allowed),
                ..Default::default()
            };
            rainbow_connected(&g, &coloring, &options).unwrap().rainbow_connected
        };
        if check(narrow) {
            prop_assert!(check(wide));
        }
    }

    #[test]
    fn graph_files_round_trip(g in arb_connected_graph(8)) {
        let text = write_graph(&g);
        let parsed = parse_graph(&text).unwrap();
        prop_assert_eq!(parsed.graph, g);
        prop_assert_eq!(parsed.duplicates_merged, 0);
    }

    #[test]
    fn coloring_files_round_trip((_, coloring) in arb_colored_graph(7, 4)) {
        let text = write_coloring(&coloring);
        let parsed = parse_coloring(&text).unwrap();
        prop_assert_eq!(parsed.k(), coloring.k());
        let entries: Vec<(EdgeId, u32)> = coloring.iter().collect();
        let reparsed: Vec<(EdgeId, u32)> = parsed.iter().collect();
        prop_assert_eq!(entries, reparsed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn verifier_matches_path_enumeration_with_restrictions(
        (g, coloring) in arb_colored_graph(6, 4),
        allowed_mask in proptest::collection::vec(any::<bool>(), 4),
    ) {
        let colors: Vec<u32> = (1..=4u32)
            .zip(&allowed_mask)
            .filter(|(_, &keep)| keep)
            .map(|(c, _)| c)
            .collect();
        let allowed: BTreeSet<u32> = colors.iter().copied().collect();
        let options = VerifyOptions {
            allowed: Some(ColorSet::from_colors(&colors)),
            ..Default::default()
        };
        let got = rainbow_connected(&g, &coloring, &options).unwrap();
        let mut expected = true;
        'outer: for s in 0..g.n() {
            for t in (s + 1)..g.n() {
                if !rainbow_core::reference::exists_rainbow_path_by_enumeration(
                    &g, &coloring, s, t, Some(&allowed),
                ) {
                    expected = false;
                    break 'outer;
                }
            }
        }
        prop_assert_eq!(got.rainbow_connected, expected);
    }
}
