//! Benchmark instances, shared so every bench measures the same graphs.

use rainbow_core::families::{
    gen_example1, gen_example2, gen_random_bridgeless_diam3, gen_random_regular, gen_standard,
    RandomGraphConfig, StandardFamily,
};
use rainbow_core::Graph;

/// Triangle spider with `t` arms of `r` stacked triangles each.
pub fn spider(r: usize, t: usize) -> Graph {
    gen_example1(r, t).expect("spider parameters").graph
}

/// K_n with a three-edge pendant leg per clique vertex, legs joined at a hub.
pub fn clique_with_legs(n: usize) -> Graph {
    gen_example2(n).expect("clique-with-legs parameters").graph
}

/// Line graph of a seeded random cubic graph on `n` vertices.
pub fn line_of_cubic(n: usize, seed: u64) -> Graph {
    gen_random_regular(n, 3, seed, &RandomGraphConfig::default())
        .expect("cubic instance")
        .line_graph()
        .0
}

/// Seeded random bridgeless diameter-3 graph with a triangle-free edge.
pub fn random_diam3(n: usize, p: f64, seed: u64) -> Graph {
    gen_random_bridgeless_diam3(n, p, seed, true, &RandomGraphConfig::default())
        .expect("random diameter-3 instance")
}

pub fn complete(n: usize) -> Graph {
    gen_standard(StandardFamily::Complete, n).expect("complete graph")
}

pub fn hexagon() -> Graph {
    gen_standard(StandardFamily::Cycle, 6).expect("hexagon")
}
