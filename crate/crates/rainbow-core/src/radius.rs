//! Layered coloring for bridgeless graphs in which every edge lies in a
//! triangle. The palette size is three times the radius.
//!
//! From a central vertex x, vertices split into layers by distance. Layer i
//! gets three colors: edges from layer i-1 into one side of a spanning-forest
//! bipartition of the layer take 3i-2, edges into the other side take 3i-1,
//! and edges inside the layer take 3i. A vertex isolated inside its layer has
//! at least two edges back to the previous layer (each of its edges closes a
//! triangle, and no triangle can stay inside the layer next to it), so one of
//! them takes 3i-2 and the rest take 3i-1.
//!
//! Any two vertices are then joined through x: each endpoint climbs one layer
//! at a time, and inside a layer both routes can pick different colors, either
//! directly or with a one-edge detour across the layer's forest.

use crate::coloring::{EdgeColoring, MAX_TRACKED_COLORS};
use crate::families;
use crate::graph::{forest_bipartition, isolated_in, EdgeId, ForestBipartition, Graph, GraphError};
use crate::verify::{rainbow_connected, VerifyOptions};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RadiusError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge ({},{}) lies in no triangle", .0.lo(), .0.hi())]
    EdgeOutsideTriangle(EdgeId),
    #[error("graph does not match the triangle-spider shape: {0}")]
    ShapeMismatch(String),
    #[error("produced coloring failed verification on pair ({},{})", .witness.0, .witness.1)]
    PostconditionFailed { witness: (usize, usize) },
}

/// One distance layer around the chosen center.
#[derive(Debug, Clone)]
pub struct Layer {
    /// All vertices at this distance.
    pub vertices: BTreeSet<usize>,
    /// The ones with no neighbor inside the layer.
    pub isolated: BTreeSet<usize>,
    /// Spanning-forest bipartition of the non-isolated part, when any.
    pub bipartition: Option<ForestBipartition>,
}

/// Distance layers around `center`; `layers[i]` holds distance i+1.
#[derive(Debug, Clone)]
pub struct LayeredDecomposition {
    pub center: usize,
    pub layers: Vec<Layer>,
}

pub fn layered_decomposition(
    g: &Graph,
    center: usize,
) -> Result<LayeredDecomposition, RadiusError> {
    if !g.has_vertex(center) {
        return Err(RadiusError::Graph(GraphError::VertexOutOfRange {
            vertex: center,
            n: g.n(),
        }));
    }
    let dist = g.bfs_distances(center);
    if dist.iter().any(Option::is_none) {
        return Err(RadiusError::Graph(GraphError::Disconnected));
    }
    let eccentricity = dist.iter().map(|d| d.unwrap()).max().unwrap_or(0);
    let mut layers = Vec::with_capacity(eccentricity);
    for i in 1..=eccentricity {
        let vertices: BTreeSet<usize> = (0..g.n()).filter(|&v| dist[v] == Some(i)).collect();
        let isolated = isolated_in(g, &vertices);
        let connected_part: BTreeSet<usize> = vertices.difference(&isolated).copied().collect();
        let bipartition = if connected_part.is_empty() {
            None
        } else {
            Some(forest_bipartition(g, &connected_part)?)
        };
        layers.push(Layer {
            vertices,
            isolated,
            bipartition,
        });
    }
    Ok(LayeredDecomposition { center, layers })
}

/// A layered coloring together with where each edge's color came from.
#[derive(Debug, Clone)]
pub struct RadiusColoring {
    pub coloring: EdgeColoring,
    pub decomposition: LayeredDecomposition,
    /// Rule tag per edge, e.g. `layer2:cross-x` or `layer3:isolated-alt`.
    pub provenance: BTreeMap<EdgeId, String>,
}

/// Color `g` with 3 * radius colors. Requires a connected graph in which
/// every edge lies in a triangle (which also rules out bridges).
///
/// The result is checked by the verifier before being returned, unless the
/// palette exceeds [`MAX_TRACKED_COLORS`]; beyond that the coloring is
/// returned as constructed.
pub fn color_by_radius_traced(g: &Graph) -> Result<RadiusColoring, RadiusError> {
    let metrics = g.metrics()?;
    if let Some(first) = g.triangle_free_edges().first() {
        return Err(RadiusError::EdgeOutsideTriangle(*first));
    }
    let center = *metrics.centers.first().expect("connected graph has a center");
    let decomposition = layered_decomposition(g, center)?;

    let dist = g.bfs_distances(center);
    let mut coloring = EdgeColoring::new(0);
    let mut provenance = BTreeMap::new();
    let tag = |provenance: &mut BTreeMap<EdgeId, String>, e: EdgeId, t: String| {
        provenance.insert(e, t);
    };

    for (idx, layer) in decomposition.layers.iter().enumerate() {
        let i = idx + 1;
        let base = 3 * i as u32;
        if let Some(bip) = &layer.bipartition {
            for (side, color, name) in [
                (&bip.part_x, base - 2, "cross-x"),
                (&bip.part_y, base - 1, "cross-y"),
            ] {
                for &w in side.iter() {
                    for &nb in g.neighbors(w) {
                        if dist[nb] == Some(i - 1) {
                            let e = EdgeId::new(w, nb);
                            coloring.set(e, color);
                            tag(&mut provenance, e, format!("layer{i}:{name}"));
                        }
                    }
                }
            }
        }
        // Every edge inside the layer, isolated vertices having none.
        for &w in &layer.vertices {
            for &nb in g.neighbors(w) {
                if nb > w && dist[nb] == Some(i) {
                    let e = EdgeId::new(w, nb);
                    coloring.set(e, base);
                    tag(&mut provenance, e, format!("layer{i}:intra"));
                }
            }
        }
        // Isolated vertices split their back edges over both cross colors.
        // Each such edge closes a triangle whose third vertex cannot sit in
        // this layer (the vertex would not be isolated), so it lies in the
        // previous layer: at least two back edges exist.
        debug_assert!(i > 1 || layer.isolated.is_empty());
        for &z in &layer.isolated {
            let back: Vec<usize> = g
                .neighbors(z)
                .iter()
                .copied()
                .filter(|&nb| dist[nb] == Some(i - 1))
                .collect();
            debug_assert!(back.len() >= 2);
            for (pos, &nb) in back.iter().enumerate() {
                let e = EdgeId::new(z, nb);
                let (color, name) = if pos == 0 {
                    (base - 2, "isolated-lead")
                } else {
                    (base - 1, "isolated-alt")
                };
                coloring.set(e, color);
                tag(&mut provenance, e, format!("layer{i}:{name}"));
            }
        }
    }

    coloring.set_k(3 * metrics.radius as u32);
    debug_assert!(coloring.is_total_on(g));

    if coloring.k() <= MAX_TRACKED_COLORS {
        let report = rainbow_connected(g, &coloring, &VerifyOptions::default())
            .expect("constructed coloring is total and within the color limit");
        if let Some(witness) = report.witness {
            return Err(RadiusError::PostconditionFailed { witness });
        }
    }
    Ok(RadiusColoring {
        coloring,
        decomposition,
        provenance,
    })
}

pub fn color_by_radius(g: &Graph) -> Result<EdgeColoring, RadiusError> {
    color_by_radius_traced(g).map(|t| t.coloring)
}

/// The closed-form coloring for the triangle-spider family
/// [`families::gen_example1`]: on every spine, the j-th spine edge (0-based)
/// takes 3j+1 and the two sides of its triangle take 3j+2 and 3j+3. Exactly
/// 3r colors are used, matching the layered bound with none to spare.
///
/// `g` must be the spider with parameters `r`, `t` under the generator's
/// vertex numbering.
pub fn example1_explicit_coloring(
    g: &Graph,
    r: usize,
    t: usize,
) -> Result<EdgeColoring, RadiusError> {
    let expected = families::gen_example1(r, t)
        .map_err(|e| RadiusError::ShapeMismatch(e.to_string()))?
        .graph;
    if *g != expected {
        return Err(RadiusError::ShapeMismatch(format!(
            "expected the generator's graph with r={r}, t={t} ({} vertices, {} edges)",
            expected.n(),
            expected.m()
        )));
    }
    let mut coloring = EdgeColoring::new(3 * r as u32);
    for i in 0..t {
        let spine = |j: usize| if j == 0 { 0 } else { 1 + 2 * r * i + (j - 1) };
        let apex = |j: usize| 1 + 2 * r * i + r + (j - 1);
        for j in 1..=r {
            let c = 3 * (j as u32 - 1);
            coloring.set(EdgeId::new(spine(j - 1), spine(j)), c + 1);
            coloring.set(EdgeId::new(spine(j - 1), apex(j)), c + 2);
            coloring.set(EdgeId::new(apex(j), spine(j)), c + 3);
        }
    }
    if coloring.k() <= MAX_TRACKED_COLORS {
        let report = rainbow_connected(g, &coloring, &VerifyOptions::default())
            .expect("constructed coloring is total and within the color limit");
        if let Some(witness) = report.witness {
            return Err(RadiusError::PostconditionFailed { witness });
        }
    }
    Ok(coloring)
}
