//! Graph generators: standard families, two structured families with labeled
//! roles, and seeded random families for sweeps.
//!
//! Everything is deterministic for a given seed; random generators draw from
//! a ChaCha8 stream and reject samples until the structural constraints hold.

use crate::graph::{Graph, GraphError};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family} needs at least {min} for {name}, got {value}")]
    ParamTooSmall {
        family: &'static str,
        name: &'static str,
        value: usize,
        min: usize,
    },
    #[error("a {d}-regular graph on {n} vertices needs an even degree sum")]
    DegreeParity { n: usize, d: usize },
    #[error("degree {d} does not fit a simple graph on {n} vertices")]
    DegreeTooLarge { n: usize, d: usize },
    #[error("no graph matched the constraints within {attempts} attempts")]
    RetriesExhausted { attempts: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A generated graph together with human-readable vertex roles and, when the
/// family has them, its branch paths (used by the pigeonhole lower-bound
/// argument).
#[derive(Debug, Clone)]
pub struct LabeledFamilyGraph {
    pub graph: Graph,
    pub labels: BTreeMap<usize, String>,
    pub branches: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardFamily {
    Path,
    Cycle,
    Complete,
    Wheel,
}

impl StandardFamily {
    pub fn name(&self) -> &'static str {
        match self {
            StandardFamily::Path => "path",
            StandardFamily::Cycle => "cycle",
            StandardFamily::Complete => "complete",
            StandardFamily::Wheel => "wheel",
        }
    }
}

pub fn gen_standard(family: StandardFamily, n: usize) -> Result<Graph, FamilyError> {
    let min = match family {
        StandardFamily::Path | StandardFamily::Complete => 1,
        StandardFamily::Cycle => 3,
        StandardFamily::Wheel => 4,
    };
    if n < min {
        return Err(FamilyError::ParamTooSmall {
            family: family.name(),
            name: "n",
            value: n,
            min,
        });
    }
    let mut edges = Vec::new();
    match family {
        StandardFamily::Path => {
            edges.extend((0..n - 1).map(|i| (i, i + 1)));
        }
        StandardFamily::Cycle => {
            edges.extend((0..n).map(|i| (i, (i + 1) % n)));
        }
        StandardFamily::Complete => {
            for u in 0..n {
                for v in (u + 1)..n {
                    edges.push((u, v));
                }
            }
        }
        StandardFamily::Wheel => {
            // Vertex 0 is the hub; 1..n-1 form the rim cycle.
            for v in 1..n {
                edges.push((0, v));
            }
            for v in 1..n - 1 {
                edges.push((v, v + 1));
            }
            edges.push((n - 1, 1));
        }
    }
    Ok(Graph::build(n, &edges)?.graph)
}

/// Spider of triangle chains: a hub, `t` spines of length `r`, and one apex
/// vertex over every spine edge. Every edge lies in a triangle, there are no
/// bridges, and the hub has eccentricity `r` (the radius).
///
/// Vertex ids: hub 0; on spine `i` (0-based), the j-th spine vertex
/// (j = 1..=r) is `1 + 2ri + (j-1)` and the apex over the j-th spine edge is
/// `1 + 2ri + r + (j-1)`. So n = 2rt + 1 and m = 3rt.
pub fn gen_example1(r: usize, t: usize) -> Result<LabeledFamilyGraph, FamilyError> {
    for (name, value) in [("r", r), ("t", t)] {
        if value < 1 {
            return Err(FamilyError::ParamTooSmall {
                family: "triangle-spider",
                name,
                value,
                min: 1,
            });
        }
    }
    let n = 2 * r * t + 1;
    let mut edges = Vec::new();
    let mut labels = BTreeMap::new();
    labels.insert(0, "hub".to_string());
    for i in 0..t {
        let spine = |j: usize| {
            if j == 0 {
                0
            } else {
                1 + 2 * r * i + (j - 1)
            }
        };
        let apex = |j: usize| 1 + 2 * r * i + r + (j - 1);
        for j in 1..=r {
            labels.insert(spine(j), format!("spine{}.{j}", i + 1));
            labels.insert(apex(j), format!("apex{}.{j}", i + 1));
            edges.push((spine(j - 1), spine(j)));
            edges.push((spine(j - 1), apex(j)));
            edges.push((apex(j), spine(j)));
        }
    }
    let graph = Graph::build(n, &edges)?.graph;
    Ok(LabeledFamilyGraph {
        graph,
        labels,
        branches: Vec::new(),
    })
}

/// A clique with a pendant 3-edge leg per clique vertex, all legs meeting in
/// one hub: clique vertices 0..n-1, leg vertices `p_i = n + 2i` and
/// `q_i = n + 2i + 1` (0-based i), hub `3n`. The diameter is 3 and the only
/// routes between leg tips run through the hub or back through the clique,
/// which makes leg color sequences pigeonhole targets.
pub fn gen_example2(n: usize) -> Result<LabeledFamilyGraph, FamilyError> {
    if n < 1 {
        return Err(FamilyError::ParamTooSmall {
            family: "clique-with-legs",
            name: "n",
            value: n,
            min: 1,
        });
    }
    let hub = 3 * n;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    let mut labels = BTreeMap::new();
    labels.insert(hub, "hub".to_string());
    let mut branches = Vec::new();
    for i in 0..n {
        let p = n + 2 * i;
        let q = n + 2 * i + 1;
        labels.insert(i, format!("core{}", i + 1));
        labels.insert(p, format!("leg{}.1", i + 1));
        labels.insert(q, format!("leg{}.2", i + 1));
        edges.push((i, p));
        edges.push((p, q));
        edges.push((q, hub));
        branches.push(vec![i, p, q, hub]);
    }
    let graph = Graph::build(3 * n + 1, &edges)?.graph;
    Ok(LabeledFamilyGraph {
        graph,
        labels,
        branches,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct RandomGraphConfig {
    pub max_attempts: usize,
}

impl Default for RandomGraphConfig {
    fn default() -> Self {
        RandomGraphConfig {
            max_attempts: 20_000,
        }
    }
}

/// Sample G(n, p) until the graph is connected, bridgeless, and has diameter
/// exactly 3 (and, when `want_triangle_free_edge` is set, at least one edge
/// that lies in no triangle).
pub fn gen_random_bridgeless_diam3(
    n: usize,
    p: f64,
    seed: u64,
    want_triangle_free_edge: bool,
    cfg: &RandomGraphConfig,
) -> Result<Graph, FamilyError> {
    if n < 4 {
        return Err(FamilyError::ParamTooSmall {
            family: "random-diameter-3",
            name: "n",
            value: n,
            min: 4,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cfg.max_attempts {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::build(n, &edges)?.graph;
        if !g.is_connected() {
            continue;
        }
        let metrics = g.metrics()?;
        if metrics.diameter != 3 || !g.find_bridges().is_empty() {
            continue;
        }
        if want_triangle_free_edge && g.triangle_free_edges().is_empty() {
            continue;
        }
        return Ok(g);
    }
    Err(FamilyError::RetriesExhausted {
        attempts: cfg.max_attempts,
    })
}

/// Sample a connected d-regular simple graph with the pairing model: shuffle
/// n*d edge stubs, pair them up, and reject pairings with self-loops,
/// repeated edges, or a disconnected result.
pub fn gen_random_regular(
    n: usize,
    d: usize,
    seed: u64,
    cfg: &RandomGraphConfig,
) -> Result<Graph, FamilyError> {
    if n < 2 {
        return Err(FamilyError::ParamTooSmall {
            family: "random-regular",
            name: "n",
            value: n,
            min: 2,
        });
    }
    if d < 1 {
        return Err(FamilyError::ParamTooSmall {
            family: "random-regular",
            name: "d",
            value: d,
            min: 1,
        });
    }
    if d >= n {
        return Err(FamilyError::DegreeTooLarge { n, d });
    }
    if (n * d) % 2 != 0 {
        return Err(FamilyError::DegreeParity { n, d });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n * d).map(|s| s / d).collect();
    'attempt: for _ in 0..cfg.max_attempts {
        // Fisher-Yates shuffle.
        for i in (1..stubs.len()).rev() {
            let j = rng.random_range(0..=i);
            stubs.swap(i, j);
        }
        let mut edges = Vec::with_capacity(n * d / 2);
        for pair in stubs.chunks(2) {
            if pair[0] == pair[1] {
                continue 'attempt;
            }
            edges.push((pair[0], pair[1]));
        }
        let report = Graph::build(n, &edges)?;
        if report.duplicates_merged > 0 || !report.graph.is_connected() {
            continue;
        }
        return Ok(report.graph);
    }
    Err(FamilyError::RetriesExhausted {
        attempts: cfg.max_attempts,
    })
}
