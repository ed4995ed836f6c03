//! Nine-color scheme for bridgeless graphs of diameter at most 3 that have an
//! anchor edge, i.e. an edge lying in no triangle.
//!
//! The anchor uv splits the rest of the graph by adjacency: A and B are the
//! private neighborhoods of u and v (disjoint, or the anchor would close a
//! triangle), X/Y/Z are second-neighborhood vertices seen from A only, B only,
//! or both, and the remaining vertices sit at distance 3 from both ends: W
//! between X and Y, I between X and Z, K between Y and Z, and J hanging off Z
//! alone. Classes are then refined by how their vertices attach (A1 touches
//! B, X, or Z; A2/A3 split the rest by having company inside A, and so on),
//! and every edge is colored by a rule for its class pair. Two base colors per
//! side (2/3 around u, 4/5 on the A-side spine, and their mirror images),
//! shared colors 6/7 on the crossings, and 8/9 inside the refinements give
//! every vertex pair a rainbow route that descends to the anchor and climbs
//! back out.

use crate::coloring::EdgeColoring;
use crate::graph::{forest_bipartition, isolated_in, EdgeId, ForestBipartition, Graph, GraphError};
use crate::verify::{rainbow_connected, VerifyOptions};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// Which refinement class a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClassLabel {
    U,
    V,
    A1,
    A2,
    A3,
    B1,
    B2,
    B3,
    X1,
    X2,
    X3,
    X4,
    Y1,
    Y2,
    Y3,
    Y4,
    Z,
    W,
    I,
    K,
    J0,
    J1,
    J2,
    J3,
    J4,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ClassLabel::U => "U",
            ClassLabel::V => "V",
            ClassLabel::A1 => "A1",
            ClassLabel::A2 => "A2",
            ClassLabel::A3 => "A3",
            ClassLabel::B1 => "B1",
            ClassLabel::B2 => "B2",
            ClassLabel::B3 => "B3",
            ClassLabel::X1 => "X1",
            ClassLabel::X2 => "X2",
            ClassLabel::X3 => "X3",
            ClassLabel::X4 => "X4",
            ClassLabel::Y1 => "Y1",
            ClassLabel::Y2 => "Y2",
            ClassLabel::Y3 => "Y3",
            ClassLabel::Y4 => "Y4",
            ClassLabel::Z => "Z",
            ClassLabel::W => "W",
            ClassLabel::I => "I",
            ClassLabel::K => "K",
            ClassLabel::J0 => "J0",
            ClassLabel::J1 => "J1",
            ClassLabel::J2 => "J2",
            ClassLabel::J3 => "J3",
            ClassLabel::J4 => "J4",
        };
        f.write_str(name)
    }
}

/// Extra context when the final self-check fails: the first failing pair,
/// the classes of its endpoints, and the colored edges around them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationDiagnostic {
    pub witness: (usize, usize),
    pub classes: (ClassLabel, ClassLabel),
    pub incident: Vec<(EdgeId, u32)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Diam3Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph diameter {0} exceeds 3")]
    DiameterTooLarge(usize),
    #[error("graph has a bridge: ({},{})", .0.lo(), .0.hi())]
    BridgePresent(EdgeId),
    #[error("every edge lies in a triangle; no anchor edge available")]
    NoAnchorEdge,
    #[error("({},{}) is not an edge of the graph", .0.lo(), .0.hi())]
    MissingAnchorEdge(EdgeId),
    #[error("anchor ({},{}) lies in a triangle", .0.lo(), .0.hi())]
    AnchorInTriangle(EdgeId),
    #[error(
        "rules disagree on ({},{}): {existing_rule} gave {existing}, {attempted_rule} wants {attempted}",
        .edge.lo(), .edge.hi()
    )]
    RuleConflict {
        edge: EdgeId,
        existing: u32,
        existing_rule: String,
        attempted: u32,
        attempted_rule: String,
    },
    #[error("no rule colored edge ({},{})", .0.lo(), .0.hi())]
    UncoloredEdge(EdgeId),
    #[error(
        "coloring failed verification on pair ({},{}) with classes {} and {}",
        .0.witness.0, .0.witness.1, .0.classes.0, .0.classes.1
    )]
    PostconditionFailed(Box<VerificationDiagnostic>),
}

/// The class decomposition induced by an anchor edge.
#[derive(Debug, Clone)]
pub struct Diam3Partition {
    pub anchor: EdgeId,
    pub u: usize,
    pub v: usize,
    pub a1: BTreeSet<usize>,
    pub a2: BTreeSet<usize>,
    pub a3: BTreeSet<usize>,
    pub b1: BTreeSet<usize>,
    pub b2: BTreeSet<usize>,
    pub b3: BTreeSet<usize>,
    pub x1: BTreeSet<usize>,
    pub x2: BTreeSet<usize>,
    pub x3: BTreeSet<usize>,
    pub x4: BTreeSet<usize>,
    pub y1: BTreeSet<usize>,
    pub y2: BTreeSet<usize>,
    pub y3: BTreeSet<usize>,
    pub y4: BTreeSet<usize>,
    pub z: BTreeSet<usize>,
    pub w: BTreeSet<usize>,
    pub i: BTreeSet<usize>,
    pub k: BTreeSet<usize>,
    pub j0: BTreeSet<usize>,
    pub j1: BTreeSet<usize>,
    pub j2: BTreeSet<usize>,
    pub j3: BTreeSet<usize>,
    pub j4: BTreeSet<usize>,
    class_of: Vec<ClassLabel>,
}

fn neighborhood_of_set(g: &Graph, s: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for &w in s {
        out.extend(g.neighbors(w).iter().copied());
    }
    out
}

fn has_neighbor_in(g: &Graph, v: usize, s: &BTreeSet<usize>) -> bool {
    // Iterate the smaller side of the membership test.
    if s.len() < g.degree(v) {
        s.iter().any(|&w| g.has_edge(v, w))
    } else {
        g.neighbors(v).iter().any(|w| s.contains(w))
    }
}

/// The smallest edge of `g` that lies in no triangle.
pub fn find_anchor_edge(g: &Graph) -> Option<EdgeId> {
    g.triangle_free_edges().first().copied()
}

/// Split a subset of vertices the way every class refinement does: the ones
/// with a neighbor in `trigger`, the ones with company among the others, and
/// the isolated rest.
fn refine(
    g: &Graph,
    set: &BTreeSet<usize>,
    trigger: &BTreeSet<usize>,
) -> (BTreeSet<usize>, BTreeSet<usize>, BTreeSet<usize>) {
    let first: BTreeSet<usize> = set
        .iter()
        .copied()
        .filter(|&w| has_neighbor_in(g, w, trigger))
        .collect();
    let rest: BTreeSet<usize> = set.difference(&first).copied().collect();
    let isolated = isolated_in(g, &rest);
    let second: BTreeSet<usize> = rest.difference(&isolated).copied().collect();
    (first, second, isolated)
}

pub fn diam3_partition(g: &Graph, anchor: EdgeId) -> Result<Diam3Partition, Diam3Error> {
    let (u, v) = anchor.endpoints();
    if !g.has_edge(u, v) {
        return Err(Diam3Error::MissingAnchorEdge(anchor));
    }
    if g.neighbors(u).intersection(g.neighbors(v)).next().is_some() {
        return Err(Diam3Error::AnchorInTriangle(anchor));
    }

    let a: BTreeSet<usize> = g.neighbors(u).iter().copied().filter(|&w| w != v).collect();
    let b: BTreeSet<usize> = g.neighbors(v).iter().copied().filter(|&w| w != u).collect();
    let mut core: BTreeSet<usize> = [u, v].into();
    core.extend(&a);
    core.extend(&b);

    let na = neighborhood_of_set(g, &a);
    let nb = neighborhood_of_set(g, &b);
    let x: BTreeSet<usize> = na.difference(&nb).filter(|w| !core.contains(w)).copied().collect();
    let y: BTreeSet<usize> = nb.difference(&na).filter(|w| !core.contains(w)).copied().collect();
    let z: BTreeSet<usize> = na.intersection(&nb).filter(|w| !core.contains(w)).copied().collect();

    let mut d = core.clone();
    d.extend(&x);
    d.extend(&y);
    d.extend(&z);

    let nx = neighborhood_of_set(g, &x);
    let ny = neighborhood_of_set(g, &y);
    let nz = neighborhood_of_set(g, &z);
    let w_set: BTreeSet<usize> = nx.intersection(&ny).filter(|t| !d.contains(t)).copied().collect();
    let i_set: BTreeSet<usize> = nx
        .intersection(&nz)
        .filter(|t| !d.contains(t) && !w_set.contains(t))
        .copied()
        .collect();
    let k_set: BTreeSet<usize> = ny
        .intersection(&nz)
        .filter(|t| !d.contains(t) && !w_set.contains(t) && !i_set.contains(t))
        .copied()
        .collect();
    let j: BTreeSet<usize> = (0..g.n())
        .filter(|t| !d.contains(t) && !w_set.contains(t) && !i_set.contains(t) && !k_set.contains(t))
        .collect();

    // A1: attached to the far side (B) or the second neighborhood (X or Z).
    let mut a_trigger = b.clone();
    a_trigger.extend(&x);
    a_trigger.extend(&z);
    let (a1, a2, a3) = refine(g, &a, &a_trigger);

    let mut b_trigger = a.clone();
    b_trigger.extend(&y);
    b_trigger.extend(&z);
    let (b1, b2, b3) = refine(g, &b, &b_trigger);

    // X1: attached to the Y side or anything beyond (Z, I, W).
    let mut x_trigger = y.clone();
    x_trigger.extend(&z);
    x_trigger.extend(&i_set);
    x_trigger.extend(&w_set);
    let (x1, x2, x34) = refine(g, &x, &x_trigger);
    let x3: BTreeSet<usize> = x34
        .iter()
        .copied()
        .filter(|&t| g.neighbors(t).iter().all(|nb| a.contains(nb)))
        .collect();
    let x4: BTreeSet<usize> = x34.difference(&x3).copied().collect();

    let mut y_trigger = x.clone();
    y_trigger.extend(&z);
    y_trigger.extend(&k_set);
    y_trigger.extend(&w_set);
    let (y1, y2, y34) = refine(g, &y, &y_trigger);
    let y3: BTreeSet<usize> = y34
        .iter()
        .copied()
        .filter(|&t| g.neighbors(t).iter().all(|nb| b.contains(nb)))
        .collect();
    let y4: BTreeSet<usize> = y34.difference(&y3).copied().collect();

    // J0 first (company inside J), then by what the rest attaches to.
    let j_isolated = isolated_in(g, &j);
    let j0: BTreeSet<usize> = j.difference(&j_isolated).copied().collect();
    let mut j1 = BTreeSet::new();
    let mut j2 = BTreeSet::new();
    let mut j3 = BTreeSet::new();
    let mut j4 = BTreeSet::new();
    for &t in &j_isolated {
        if has_neighbor_in(g, t, &k_set) {
            j1.insert(t);
        } else if has_neighbor_in(g, t, &i_set) {
            j2.insert(t);
        } else if has_neighbor_in(g, t, &w_set) {
            j3.insert(t);
        } else {
            j4.insert(t);
        }
    }

    let mut class_of = vec![ClassLabel::U; g.n()];
    let groups: [(&BTreeSet<usize>, ClassLabel); 23] = [
        (&a1, ClassLabel::A1),
        (&a2, ClassLabel::A2),
        (&a3, ClassLabel::A3),
        (&b1, ClassLabel::B1),
        (&b2, ClassLabel::B2),
        (&b3, ClassLabel::B3),
        (&x1, ClassLabel::X1),
        (&x2, ClassLabel::X2),
        (&x3, ClassLabel::X3),
        (&x4, ClassLabel::X4),
        (&y1, ClassLabel::Y1),
        (&y2, ClassLabel::Y2),
        (&y3, ClassLabel::Y3),
        (&y4, ClassLabel::Y4),
        (&z, ClassLabel::Z),
        (&w_set, ClassLabel::W),
        (&i_set, ClassLabel::I),
        (&k_set, ClassLabel::K),
        (&j0, ClassLabel::J0),
        (&j1, ClassLabel::J1),
        (&j2, ClassLabel::J2),
        (&j3, ClassLabel::J3),
        (&j4, ClassLabel::J4),
    ];
    class_of[v] = ClassLabel::V;
    for (set, label) in groups {
        for &t in set.iter() {
            class_of[t] = label;
        }
    }

    Ok(Diam3Partition {
        anchor,
        u,
        v,
        a1,
        a2,
        a3,
        b1,
        b2,
        b3,
        x1,
        x2,
        x3,
        x4,
        y1,
        y2,
        y3,
        y4,
        z,
        w: w_set,
        i: i_set,
        k: k_set,
        j0,
        j1,
        j2,
        j3,
        j4,
        class_of,
    })
}

impl Diam3Partition {
    pub fn class_of(&self, vertex: usize) -> ClassLabel {
        self.class_of[vertex]
    }

    pub fn a(&self) -> BTreeSet<usize> {
        self.a1.union(&self.a2).chain(&self.a3).copied().collect()
    }

    pub fn b(&self) -> BTreeSet<usize> {
        self.b1.union(&self.b2).chain(&self.b3).copied().collect()
    }

    pub fn x(&self) -> BTreeSet<usize> {
        self.x1
            .union(&self.x2)
            .chain(&self.x3)
            .chain(&self.x4)
            .copied()
            .collect()
    }

    pub fn y(&self) -> BTreeSet<usize> {
        self.y1
            .union(&self.y2)
            .chain(&self.y3)
            .chain(&self.y4)
            .copied()
            .collect()
    }

    pub fn j(&self) -> BTreeSet<usize> {
        self.j0
            .union(&self.j1)
            .chain(&self.j2)
            .chain(&self.j3)
            .chain(&self.j4)
            .copied()
            .collect()
    }

    /// Check the structural facts the coloring rules rely on. Returns the
    /// first violated fact as text.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let du = g.bfs_distances(self.u);
        let dv = g.bfs_distances(self.v);
        let a = self.a();
        let b = self.b();
        let x = self.x();
        let y = self.y();
        let j = self.j();

        if self.a1.is_empty() || self.b1.is_empty() {
            return Err("A1 and B1 must be nonempty in a bridgeless graph".into());
        }
        for (set, dist, name) in [
            (&x, &du, "X"),
            (&self.z, &du, "Z"),
            (&y, &dv, "Y"),
            (&self.z, &dv, "Z"),
        ] {
            for &t in set.iter() {
                if dist[t] != Some(2) {
                    return Err(format!("{name} vertex {t} is not at distance 2"));
                }
            }
        }
        for far in [&self.w, &self.i, &self.k, &j] {
            for &t in far.iter() {
                if du[t] != Some(3) || dv[t] != Some(3) {
                    return Err(format!("far vertex {t} is not at distance 3 from both ends"));
                }
            }
        }
        for e in g.edges() {
            let (p, q) = e.endpoints();
            let cross = |s: &BTreeSet<usize>, t: &BTreeSet<usize>| {
                (s.contains(&p) && t.contains(&q)) || (s.contains(&q) && t.contains(&p))
            };
            if cross(&a, &b) && !cross(&self.a1, &self.b1) {
                return Err(format!("edge ({p},{q}) joins A and B outside A1 x B1"));
            }
            if cross(&a, &y) || cross(&b, &x) {
                return Err(format!("edge ({p},{q}) joins a side to the far second neighborhood"));
            }
            if cross(&j, &x) || cross(&j, &y) {
                return Err(format!("edge ({p},{q}) joins J to X or Y"));
            }
            if cross(&self.k, &x) || cross(&self.i, &y) {
                return Err(format!("edge ({p},{q}) joins I/K to the wrong side"));
            }
        }
        for &t in &self.x3 {
            if !g.neighbors(t).iter().all(|nb| self.a1.contains(nb)) {
                return Err(format!("X3 vertex {t} has a neighbor outside A1"));
            }
        }
        for &t in &self.y3 {
            if !g.neighbors(t).iter().all(|nb| self.b1.contains(nb)) {
                return Err(format!("Y3 vertex {t} has a neighbor outside B1"));
            }
        }
        for &t in &self.x4 {
            if !has_neighbor_in(g, t, &self.x1) {
                return Err(format!("X4 vertex {t} has no X1 neighbor"));
            }
        }
        for &t in &self.y4 {
            if !has_neighbor_in(g, t, &self.y1) {
                return Err(format!("Y4 vertex {t} has no Y1 neighbor"));
            }
        }
        for &t in &self.j4 {
            let zn = g.neighbors(t).iter().filter(|nb| self.z.contains(nb)).count();
            if zn != g.degree(t) || zn < 2 {
                return Err(format!("J4 vertex {t} must have two or more neighbors, all in Z"));
            }
        }
        Ok(())
    }
}

/// How the two anchor-side rows assign colors 2 and 3.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum UvRows {
    /// B1 pairs with color 3 (mirroring A3) and B3 with color 2.
    #[default]
    Crossed,
    /// B1 pairs with color 2 (mirroring A1) and B3 with color 3.
    Aligned,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Diam3Options {
    pub uv_rows: UvRows,
}

/// Write-once edge-color assignments; a second write to the same edge is a
/// hard error naming both rules, so overlapping rules cannot mask each other.
#[derive(Debug, Clone, Default)]
pub struct PartialColoring {
    assignments: BTreeMap<EdgeId, (u32, String)>,
}

impl PartialColoring {
    pub fn new() -> Self {
        PartialColoring {
            assignments: BTreeMap::new(),
        }
    }

    pub fn assign(&mut self, edge: EdgeId, color: u32, rule: &str) -> Result<(), Diam3Error> {
        if let Some((existing, existing_rule)) = self.assignments.get(&edge) {
            return Err(Diam3Error::RuleConflict {
                edge,
                existing: *existing,
                existing_rule: existing_rule.clone(),
                attempted: color,
                attempted_rule: rule.to_string(),
            });
        }
        self.assignments.insert(edge, (color, rule.to_string()));
        Ok(())
    }

    pub fn is_colored(&self, edge: EdgeId) -> bool {
        self.assignments.contains_key(&edge)
    }

    pub fn color_of(&self, edge: EdgeId) -> Option<u32> {
        self.assignments.get(&edge).map(|(c, _)| *c)
    }
}

/// Two-color fan onto a set plus a filler inside it: bipartition a spanning
/// forest of G[S], color all edges from T to one side `alpha`, to the other
/// side `beta`, and every edge inside S `gamma`.
///
/// G[S] must have no isolated vertices (S empty is fine). Returns the
/// bipartition so callers can key further rules off the sides.
pub fn fan_coloring(
    g: &Graph,
    s: &BTreeSet<usize>,
    t: &BTreeSet<usize>,
    alpha: u32,
    beta: u32,
    gamma: u32,
    partial: &mut PartialColoring,
    rule: &str,
) -> Result<ForestBipartition, Diam3Error> {
    let bip = forest_bipartition(g, s)?;
    for (side, color) in [(&bip.part_x, alpha), (&bip.part_y, beta)] {
        for &p in side.iter() {
            for &nb in g.neighbors(p) {
                if t.contains(&nb) {
                    partial.assign(EdgeId::new(p, nb), color, rule)?;
                }
            }
        }
    }
    for &p in s.iter() {
        for &nb in g.neighbors(p) {
            if nb > p && s.contains(&nb) {
                partial.assign(EdgeId::new(p, nb), gamma, rule)?;
            }
        }
    }
    Ok(bip)
}

/// One-directional base-table row lookup; callers try both orders.
fn base_row(a: ClassLabel, b: ClassLabel, rows: UvRows) -> Option<u32> {
    use ClassLabel::*;
    let color = match (a, b) {
        (U, V) => 1,
        (U, A1) => 2,
        (U, A3) => 3,
        (V, B1) => match rows {
            UvRows::Crossed => 3,
            UvRows::Aligned => 2,
        },
        (V, B3) => match rows {
            UvRows::Crossed => 2,
            UvRows::Aligned => 3,
        },
        (A1, A1) | (A1, X1) | (A1, Z) => 4,
        (B1, B1) | (B1, Y1) | (B1, Z) => 5,
        (A1, B1) | (Z, K) | (X1, I) | (X1, Z) | (X1, W) | (X1, Y1) => 6,
        (Z, I) | (Y1, K) | (Y1, Z) | (Y1, W) => 7,
        (A1, A3) | (B1, B3) | (X1, X4) | (Y1, Y4) => 8,
        (J0 | J1 | J2 | J3 | J4, I | K | W) => 8,
        (A1, X4) | (B1, Y4) => 9,
        _ => return None,
    };
    Some(color)
}

fn base_color(a: ClassLabel, b: ClassLabel, rows: UvRows) -> Option<u32> {
    base_row(a, b, rows).or_else(|| base_row(b, a, rows))
}

/// One-directional list of class pairs whose edges no earlier rule claims.
fn leftover_row(a: ClassLabel, b: ClassLabel) -> bool {
    use ClassLabel::*;
    matches!(
        (a, b),
        (A1, A2)
            | (B1, B2)
            | (X1, X1)
            | (Y1, Y1)
            | (Z, Z)
            | (Z, W)
            | (W, W)
            | (I, I)
            | (K, K)
            | (W, I)
            | (W, K)
            | (I, K)
    )
}

/// Pick the edge of an X3 or Y3 vertex that carries color 7: prefer a
/// neighbor adjacent to the far side's attached class, then one that shares a
/// common neighbor with it, then the smallest neighbor.
fn designated_neighbor(g: &Graph, vertex: usize, far_attached: &BTreeSet<usize>) -> usize {
    let neighbors: Vec<usize> = g.neighbors(vertex).iter().copied().collect();
    if let Some(&direct) = neighbors
        .iter()
        .find(|&&nb| has_neighbor_in(g, nb, far_attached))
    {
        return direct;
    }
    if let Some(&shared) = neighbors.iter().find(|&&nb| {
        g.neighbors(nb)
            .iter()
            .any(|&mid| has_neighbor_in(g, mid, far_attached))
    }) {
        return shared;
    }
    neighbors[0]
}

/// The coloring with everything used to build it.
#[derive(Debug, Clone)]
pub struct Diam3Coloring {
    pub coloring: EdgeColoring,
    pub partition: Diam3Partition,
    /// Rule tag per edge, e.g. `base:A1-X1` or `fan:X2`.
    pub provenance: BTreeMap<EdgeId, String>,
}

/// Color a connected, bridgeless graph of diameter at most 3 with at most
/// nine colors, anchored at its smallest triangle-free edge.
///
/// Errors if the graph is out of scope (diameter above 3, a bridge, or no
/// triangle-free edge; graphs whose every edge lies in a triangle are covered
/// by the layered colorer instead). The result is checked by the verifier
/// before being returned.
pub fn color_diam3_traced(g: &Graph, options: &Diam3Options) -> Result<Diam3Coloring, Diam3Error> {
    let metrics = g.metrics()?;
    if metrics.diameter > 3 {
        return Err(Diam3Error::DiameterTooLarge(metrics.diameter));
    }
    if let Some(bridge) = g.find_bridges().first() {
        return Err(Diam3Error::BridgePresent(*bridge));
    }
    let anchor = find_anchor_edge(g).ok_or(Diam3Error::NoAnchorEdge)?;
    let partition = diam3_partition(g, anchor)?;
    let p = &partition;

    let mut partial = PartialColoring::new();

    // Base table rows, one pass over the edges.
    for e in g.edges() {
        let (ca, cb) = (p.class_of(e.lo()), p.class_of(e.hi()));
        if let Some(color) = base_color(ca, cb, options.uv_rows) {
            let (first, second) = if ca <= cb { (ca, cb) } else { (cb, ca) };
            partial.assign(*e, color, &format!("base:{first}-{second}"))?;
        }
    }

    // Fans: the detached parts of A and B hang off u and v with the u/v row
    // colors; detached X2/Y2 hang off the attached side classes; J0 hangs off
    // Z. The filler color inside each fanned set differs per side.
    let u_set: BTreeSet<usize> = [p.u].into();
    let v_set: BTreeSet<usize> = [p.v].into();
    fan_coloring(g, &p.a2, &u_set, 2, 3, 8, &mut partial, "fan:A2")?;
    fan_coloring(g, &p.b2, &v_set, 2, 3, 8, &mut partial, "fan:B2")?;
    let x2_bip = fan_coloring(g, &p.x2, &p.a1, 8, 9, 7, &mut partial, "fan:X2")?;
    let y2_bip = fan_coloring(g, &p.y2, &p.b1, 8, 9, 7, &mut partial, "fan:Y2")?;
    fan_coloring(g, &p.j0, &p.z, 7, 9, 8, &mut partial, "fan:J0")?;

    // X3/Y3 vertices: one designated edge takes 7, the rest take 9.
    for (set, far_attached, rule) in [(&p.x3, &p.b1, "designated:X3"), (&p.y3, &p.a1, "designated:Y3")]
    {
        for &t in set.iter() {
            let designated = designated_neighbor(g, t, far_attached);
            for &nb in g.neighbors(t) {
                let color = if nb == designated { 7 } else { 9 };
                partial.assign(EdgeId::new(t, nb), color, rule)?;
            }
        }
    }

    // Detached J vertices reach only into Z: the ones that also touch I, K,
    // or W put 7 on every Z edge; the rest lead with 7 and fall back to 9.
    for set in [&p.j1, &p.j2, &p.j3] {
        for &t in set.iter() {
            for &nb in g.neighbors(t) {
                if p.z.contains(&nb) {
                    partial.assign(EdgeId::new(t, nb), 7, "legs:J123")?;
                }
            }
        }
    }
    for &t in &p.j4 {
        let mut legs: Vec<usize> = g
            .neighbors(t)
            .iter()
            .copied()
            .filter(|nb| p.z.contains(nb))
            .collect();
        legs.sort_unstable();
        for (pos, &nb) in legs.iter().enumerate() {
            let color = if pos == 0 { 7 } else { 9 };
            partial.assign(EdgeId::new(t, nb), color, "legs:J4")?;
        }
    }

    // Defensive sweep: any edge inside X2 or Y2 not already colored takes 4.
    // The fans above color all of them, so this never fires.
    for set in [&p.x2, &p.y2] {
        for &t in set.iter() {
            for &nb in g.neighbors(t) {
                if nb > t && set.contains(&nb) {
                    let e = EdgeId::new(t, nb);
                    if !partial.is_colored(e) {
                        partial.assign(e, 4, "sweep:inside")?;
                    }
                }
            }
        }
    }

    // Edges from X2 up to X1 flip the 8/9 the fan used toward A1, so both
    // escape routes of an X2 vertex differ; same on the Y side.
    for (set, bip, upper, rule) in [
        (&p.x2, &x2_bip, &p.x1, "flip:X2"),
        (&p.y2, &y2_bip, &p.y1, "flip:Y2"),
    ] {
        for &t in set.iter() {
            let fan_color = if bip.part_x.contains(&t) { 8 } else { 9 };
            for &nb in g.neighbors(t) {
                if upper.contains(&nb) {
                    partial.assign(EdgeId::new(t, nb), 17 - fan_color, rule)?;
                }
            }
        }
    }

    // Remaining class pairs all take 9.
    for e in g.edges() {
        if partial.is_colored(*e) {
            continue;
        }
        let (ca, cb) = (p.class_of(e.lo()), p.class_of(e.hi()));
        if leftover_row(ca, cb) || leftover_row(cb, ca) {
            let (first, second) = if ca <= cb { (ca, cb) } else { (cb, ca) };
            partial.assign(*e, 9, &format!("leftover:{first}-{second}"))?;
        }
    }

    let mut coloring = EdgeColoring::new(0);
    let mut provenance = BTreeMap::new();
    for e in g.edges() {
        match partial.color_of(*e) {
            Some(color) => {
                coloring.set(*e, color);
            }
            None => return Err(Diam3Error::UncoloredEdge(*e)),
        }
    }
    for (e, (_, rule)) in partial.assignments {
        provenance.insert(e, rule);
    }
    coloring.set_k(9);

    let report = rainbow_connected(g, &coloring, &VerifyOptions::default())
        .expect("constructed coloring is total and within the color limit");
    if let Some(witness) = report.witness {
        let incident: Vec<(EdgeId, u32)> = coloring
            .iter()
            .filter(|(e, _)| e.touches(witness.0) || e.touches(witness.1))
            .collect();
        return Err(Diam3Error::PostconditionFailed(Box::new(
            VerificationDiagnostic {
                witness,
                classes: (p.class_of(witness.0), p.class_of(witness.1)),
                incident,
            },
        )));
    }

    Ok(Diam3Coloring {
        coloring,
        partition,
        provenance,
    })
}

pub fn color_diam3(g: &Graph, options: &Diam3Options) -> Result<EdgeColoring, Diam3Error> {
    color_diam3_traced(g, options).map(|t| t.coloring)
}
