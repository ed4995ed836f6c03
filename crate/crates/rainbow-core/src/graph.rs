//! Simple undirected graphs with the structural queries the colorers need:
//! distance metrics, bridges, triangle cover, induced subgraphs, spanning
//! forest bipartitions, and line graphs.
//!
//! Vertices are dense `0..n` ids. The 1-indexed convention of the text
//! formats is translated at the parsing boundary, never here.

use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Canonical undirected edge: endpoints are stored ordered, `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId {
    lo: usize,
    hi: usize,
}

impl EdgeId {
    /// Canonicalizes the endpoint order. Panics on a self-loop, which no
    /// simple graph can contain.
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "self-loop ({a},{b}) is not a valid edge");
        EdgeId {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    /// The endpoint that is not `v`. Panics if `v` is not an endpoint.
    pub fn other(&self, v: usize) -> usize {
        if v == self.lo {
            self.hi
        } else if v == self.hi {
            self.lo
        } else {
            panic!("vertex {v} is not an endpoint of ({},{})", self.lo, self.hi)
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.lo == v || self.hi == v
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge endpoint {endpoint} out of range for {n} vertices")]
    EndpointOutOfRange { endpoint: usize, n: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex {0} is isolated within the selected subset")]
    IsolatedInSubset(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<EdgeId>,
    adj: Vec<BTreeSet<usize>>,
}

/// Result of [`Graph::build`]: the graph plus how many duplicate input edges
/// were merged away.
#[derive(Debug, Clone)]
pub struct BuildReport {
    pub graph: Graph,
    pub duplicates_merged: usize,
}

/// Per-vertex eccentricities and the derived radius/diameter/center data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricSummary {
    pub eccentricity: Vec<usize>,
    pub radius: usize,
    pub diameter: usize,
    /// Vertices of minimum eccentricity, ascending.
    pub centers: Vec<usize>,
}

/// Spanning forest of an induced subgraph together with the proper
/// 2-coloring of that forest.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ForestBipartition {
    pub forest: Vec<EdgeId>,
    pub part_x: BTreeSet<usize>,
    pub part_y: BTreeSet<usize>,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops and out-of-range
    /// endpoints are rejected; duplicate edges are merged and counted.
    pub fn build(n: usize, edge_list: &[(usize, usize)]) -> Result<BuildReport, GraphError> {
        let mut seen: BTreeSet<EdgeId> = BTreeSet::new();
        let mut duplicates = 0usize;
        for &(a, b) in edge_list {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for endpoint in [a, b] {
                if endpoint >= n {
                    return Err(GraphError::EndpointOutOfRange { endpoint, n });
                }
            }
            if !seen.insert(EdgeId::new(a, b)) {
                duplicates += 1;
            }
        }
        let edges: Vec<EdgeId> = seen.into_iter().collect();
        let mut adj = vec![BTreeSet::new(); n];
        for e in &edges {
            adj[e.lo()].insert(e.hi());
            adj[e.hi()].insert(e.lo());
        }
        Ok(BuildReport {
            graph: Graph { n, edges, adj },
            duplicates_merged: duplicates,
        })
    }

    /// Convenience constructor for inputs known to be clean; panics otherwise.
    pub fn from_edges(n: usize, edge_list: &[(usize, usize)]) -> Graph {
        Self::build(n, edge_list).expect("invalid edge list").graph
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// All edges in canonical ascending order.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adj[a].contains(&b)
    }

    pub fn has_vertex(&self, v: usize) -> bool {
        v < self.n
    }

    /// BFS distances from `src`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = std::collections::VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &w in &self.adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    /// Eccentricities, radius, diameter and centers. Errors on an empty or
    /// disconnected graph, where the quantities are undefined.
    pub fn metrics(&self) -> Result<MetricSummary, GraphError> {
        if self.n == 0 {
            return Err(GraphError::Empty);
        }
        let mut eccentricity = Vec::with_capacity(self.n);
        for v in 0..self.n {
            let dist = self.bfs_distances(v);
            let mut ecc = 0usize;
            for d in &dist {
                match d {
                    Some(d) => ecc = ecc.max(*d),
                    None => return Err(GraphError::Disconnected),
                }
            }
            eccentricity.push(ecc);
        }
        let radius = *eccentricity.iter().min().unwrap();
        let diameter = *eccentricity.iter().max().unwrap();
        let centers = (0..self.n)
            .filter(|&v| eccentricity[v] == radius)
            .collect();
        Ok(MetricSummary {
            eccentricity,
            radius,
            diameter,
            centers,
        })
    }

    /// All bridges (cut edges), ascending. Iterative lowlink DFS so deep
    /// graphs cannot overflow the stack.
    pub fn find_bridges(&self) -> Vec<EdgeId> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut bridges = Vec::new();
        let mut timer = 0usize;

        for start in 0..n {
            if disc[start] != usize::MAX {
                continue;
            }
            // Stack holds (vertex, neighbor iterator position snapshot).
            let mut stack: Vec<(usize, Vec<usize>, usize)> = Vec::new();
            disc[start] = timer;
            low[start] = timer;
            timer += 1;
            let nbrs: Vec<usize> = self.adj[start].iter().copied().collect();
            stack.push((start, nbrs, 0));
            while let Some((v, nbrs, idx)) = stack.last_mut() {
                let v = *v;
                if *idx < nbrs.len() {
                    let w = nbrs[*idx];
                    *idx += 1;
                    if disc[w] == usize::MAX {
                        parent[w] = v;
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        let wn: Vec<usize> = self.adj[w].iter().copied().collect();
                        stack.push((w, wn, 0));
                    } else if w != parent[v] {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (p, _, _)) = stack.last_mut() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            bridges.push(EdgeId::new(p, v));
                        }
                    }
                }
            }
        }
        bridges.sort();
        bridges
    }

    /// Edges whose endpoints have no common neighbor, i.e. edges lying in no
    /// triangle. Empty result means every edge is in a triangle.
    pub fn triangle_free_edges(&self) -> Vec<EdgeId> {
        self.edges
            .iter()
            .copied()
            .filter(|e| self.adj[e.lo()].is_disjoint(&self.adj[e.hi()]))
            .collect()
    }

    /// Subgraph induced by `s`, with vertices renumbered densely in ascending
    /// order of their old ids. Returns the old-to-new id map alongside.
    pub fn induced_subgraph(&self, s: &BTreeSet<usize>) -> (Graph, BTreeMap<usize, usize>) {
        let map: BTreeMap<usize, usize> = s.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let mut edge_list = Vec::new();
        for e in &self.edges {
            if let (Some(&a), Some(&b)) = (map.get(&e.lo()), map.get(&e.hi())) {
                edge_list.push((a, b));
            }
        }
        let graph = Graph::build(map.len(), &edge_list)
            .expect("induced edges are valid by construction")
            .graph;
        (graph, map)
    }

    /// Line graph: one vertex per edge of `self` (in canonical edge order),
    /// adjacent when the underlying edges share an endpoint. Returns the map
    /// from original edges to line-graph vertex ids.
    pub fn line_graph(&self) -> (Graph, BTreeMap<EdgeId, usize>) {
        let map: BTreeMap<EdgeId, usize> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();
        let mut edge_list = Vec::new();
        // Edges incident to a shared vertex form a clique in the line graph.
        for v in 0..self.n {
            let incident: Vec<usize> = self
                .adj[v]
                .iter()
                .map(|&w| map[&EdgeId::new(v, w)])
                .collect();
            for i in 0..incident.len() {
                for j in (i + 1)..incident.len() {
                    edge_list.push((incident[i], incident[j]));
                }
            }
        }
        let graph = Graph::build(self.m(), &edge_list)
            .expect("line graph edges are valid by construction")
            .graph;
        (graph, map)
    }
}

/// Vertices of `s` with no neighbor inside `s`.
pub fn isolated_in(g: &Graph, s: &BTreeSet<usize>) -> BTreeSet<usize> {
    s.iter()
        .copied()
        .filter(|&v| g.neighbors(v).iter().all(|w| !s.contains(w)))
        .collect()
}

/// Spanning forest of `G[s]` with a proper 2-coloring of the forest.
///
/// Deterministic: components are processed in ascending order of their
/// smallest vertex, each is grown by BFS from that smallest vertex, neighbor
/// scans ascend, and the BFS root lands in `part_x`. Errors if some vertex of
/// `s` is isolated inside `G[s]`; an empty `s` yields an empty bipartition.
pub fn forest_bipartition(g: &Graph, s: &BTreeSet<usize>) -> Result<ForestBipartition, GraphError> {
    for &v in s {
        if !g.has_vertex(v) {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    if let Some(&v) = isolated_in(g, s).iter().next() {
        return Err(GraphError::IsolatedInSubset(v));
    }
    let mut fb = ForestBipartition::default();
    let mut side: BTreeMap<usize, bool> = BTreeMap::new(); // true = X
    for &root in s {
        if side.contains_key(&root) {
            continue;
        }
        side.insert(root, true);
        fb.part_x.insert(root);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let v_side = side[&v];
            for &w in g.neighbors(v) {
                if s.contains(&w) && !side.contains_key(&w) {
                    side.insert(w, !v_side);
                    if v_side {
                        fb.part_y.insert(w);
                    } else {
                        fb.part_x.insert(w);
                    }
                    fb.forest.push(EdgeId::new(v, w));
                    queue.push_back(w);
                }
            }
        }
    }
    fb.forest.sort();
    Ok(fb)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> BTreeSet<usize> {
        vs.iter().copied().collect()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    fn cycle(n: usize) -> Graph {
        let mut e: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        e.push((n - 1, 0));
        Graph::from_edges(n, &e)
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                e.push((i, j));
            }
        }
        Graph::from_edges(n, &e)
    }

    #[test]
    fn build_rejects_self_loop() {
        assert_eq!(
            Graph::build(3, &[(0, 0)]).unwrap_err(),
            GraphError::SelfLoop(0)
        );
    }

    #[test]
    fn build_rejects_out_of_range() {
        assert_eq!(
            Graph::build(3, &[(0, 3)]).unwrap_err(),
            GraphError::EndpointOutOfRange { endpoint: 3, n: 3 }
        );
    }

    #[test]
    fn build_merges_duplicates_and_counts() {
        let report = Graph::build(3, &[(0, 1), (1, 0), (1, 2), (0, 1)]).unwrap();
        assert_eq!(report.graph.m(), 2);
        assert_eq!(report.duplicates_merged, 2);
    }

    #[test]
    fn edges_are_canonical_ascending() {
        let g = Graph::from_edges(4, &[(3, 2), (1, 0), (2, 0)]);
        let got: Vec<(usize, usize)> = g.edges().iter().map(|e| e.endpoints()).collect();
        assert_eq!(got, vec![(0, 1), (0, 2), (2, 3)]);
    }

    #[test]
    fn metrics_on_p4() {
        let m = path(4).metrics().unwrap();
        assert_eq!(m.eccentricity, vec![3, 2, 2, 3]);
        assert_eq!(m.radius, 2);
        assert_eq!(m.diameter, 3);
        assert_eq!(m.centers, vec![1, 2]);
    }

    #[test]
    fn metrics_on_c6_and_k5() {
        let m = cycle(6).metrics().unwrap();
        assert_eq!((m.radius, m.diameter), (3, 3));
        assert_eq!(m.centers, vec![0, 1, 2, 3, 4, 5]);
        let m = complete(5).metrics().unwrap();
        assert_eq!((m.radius, m.diameter), (1, 1));
    }

    #[test]
    fn metrics_rejects_disconnected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(g.metrics().unwrap_err(), GraphError::Disconnected);
    }

    #[test]
    fn bridges_of_path_and_cycle() {
        let b: Vec<_> = path(3).find_bridges().iter().map(|e| e.endpoints()).collect();
        assert_eq!(b, vec![(0, 1), (1, 2)]);
        assert!(cycle(5).find_bridges().is_empty());
    }

    #[test]
    fn bridge_between_two_triangles() {
        // Two triangles joined by a single edge: only that edge is a bridge.
        let g = Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)],
        );
        let b: Vec<_> = g.find_bridges().iter().map(|e| e.endpoints()).collect();
        assert_eq!(b, vec![(2, 3)]);
    }

    #[test]
    fn bridges_match_removal_connectivity_oracle() {
        // Independent check: an edge is a bridge iff its endpoints fall into
        // different components once the edge is removed.
        let samples = [
            path(6),
            cycle(7),
            complete(5),
            Graph::from_edges(7, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6)]),
        ];
        for g in &samples {
            let expected: Vec<EdgeId> = g
                .edges()
                .iter()
                .copied()
                .filter(|&e| {
                    let remaining: Vec<(usize, usize)> = g
                        .edges()
                        .iter()
                        .filter(|&&f| f != e)
                        .map(|f| f.endpoints())
                        .collect();
                    let h = Graph::from_edges(g.n(), &remaining);
                    h.bfs_distances(e.lo())[e.hi()].is_none()
                })
                .collect();
            assert_eq!(g.find_bridges(), expected);
        }
    }

    #[test]
    fn triangle_free_edges_examples() {
        assert!(complete(4).triangle_free_edges().is_empty());
        assert_eq!(cycle(4).triangle_free_edges().len(), 4);
        assert_eq!(cycle(6).triangle_free_edges().len(), 6);
    }

    #[test]
    fn induced_subgraph_renumbers_densely() {
        let (h, map) = complete(4).induced_subgraph(&set(&[1, 2, 3]));
        assert_eq!(h.n(), 3);
        assert_eq!(h.m(), 3);
        assert_eq!(map[&1], 0);
        assert_eq!(map[&3], 2);

        let (h, map) = cycle(5).induced_subgraph(&set(&[0, 1, 3]));
        assert_eq!(h.n(), 3);
        let got: Vec<(usize, usize)> = h.edges().iter().map(|e| e.endpoints()).collect();
        assert_eq!(got, vec![(0, 1)]);
        assert_eq!(map[&3], 2);

        let (h, _) = cycle(5).induced_subgraph(&BTreeSet::new());
        assert_eq!((h.n(), h.m()), (0, 0));
    }

    #[test]
    fn isolated_in_examples() {
        let g = cycle(5);
        assert!(isolated_in(&g, &set(&[0, 1, 2])).is_empty());
        assert_eq!(isolated_in(&g, &set(&[0, 2])), set(&[0, 2]));
        assert_eq!(isolated_in(&g, &set(&[0, 1, 3])), set(&[3]));
    }

    #[test]
    fn forest_bipartition_of_an_edge_and_star() {
        let g = path(2);
        let fb = forest_bipartition(&g, &set(&[0, 1])).unwrap();
        assert_eq!(fb.part_x, set(&[0]));
        assert_eq!(fb.part_y, set(&[1]));
        assert_eq!(fb.forest.len(), 1);

        // Star K_{1,3}: hub 0 with leaves 1..3.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let fb = forest_bipartition(&g, &set(&[0, 1, 2, 3])).unwrap();
        assert_eq!(fb.part_x, set(&[0]));
        assert_eq!(fb.part_y, set(&[1, 2, 3]));
        assert_eq!(fb.forest.len(), 3);
    }

    #[test]
    fn forest_bipartition_of_c4_matches_spanning_tree_enumeration() {
        let g = cycle(4);
        let fb = forest_bipartition(&g, &set(&[0, 1, 2, 3])).unwrap();
        // Frozen deterministic output: BFS from 0 omits exactly edge (2,3).
        assert_eq!(fb.part_x, set(&[0, 2]));
        assert_eq!(fb.part_y, set(&[1, 3]));
        let forest: Vec<(usize, usize)> = fb.forest.iter().map(|e| e.endpoints()).collect();
        assert_eq!(forest, vec![(0, 1), (0, 3), (1, 2)]);

        // Oracle: each spanning tree of C4 is the cycle minus one edge; ours
        // must be one of them, properly 2-colored, with the omitted edge
        // joining the two parts.
        let trees: Vec<Vec<EdgeId>> = g
            .edges()
            .iter()
            .map(|&skip| g.edges().iter().copied().filter(|&e| e != skip).collect())
            .collect();
        assert!(trees.contains(&fb.forest));
        for e in &fb.forest {
            assert_ne!(
                fb.part_x.contains(&e.lo()),
                fb.part_x.contains(&e.hi()),
                "forest edge inside one part"
            );
        }
        let omitted = g.edges().iter().find(|e| !fb.forest.contains(e)).unwrap();
        assert_ne!(
            fb.part_x.contains(&omitted.lo()),
            fb.part_x.contains(&omitted.hi())
        );
    }

    #[test]
    fn forest_bipartition_rejects_isolated_vertex() {
        let g = cycle(5);
        assert_eq!(
            forest_bipartition(&g, &set(&[0, 1, 3])).unwrap_err(),
            GraphError::IsolatedInSubset(3)
        );
    }

    #[test]
    fn forest_bipartition_of_empty_set_is_empty() {
        let fb = forest_bipartition(&cycle(4), &BTreeSet::new()).unwrap();
        assert!(fb.forest.is_empty() && fb.part_x.is_empty() && fb.part_y.is_empty());
    }

    #[test]
    fn forest_bipartition_handles_multiple_components() {
        // Two disjoint edges inside a 6-cycle subset selection.
        let g = cycle(6);
        let fb = forest_bipartition(&g, &set(&[0, 1, 3, 4])).unwrap();
        assert_eq!(fb.part_x, set(&[0, 3]));
        assert_eq!(fb.part_y, set(&[1, 4]));
        assert_eq!(fb.forest.len(), 2);
    }

    #[test]
    fn line_graph_examples() {
        let (l, map) = path(4).line_graph();
        assert_eq!((l.n(), l.m()), (3, 2)); // L(P4) = P3
        assert_eq!(map[&EdgeId::new(0, 1)], 0);

        let (l, _) = complete(3).line_graph();
        assert_eq!((l.n(), l.m()), (3, 3)); // L(K3) = K3

        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let (l, _) = star.line_graph();
        assert_eq!((l.n(), l.m()), (3, 3)); // L(K_{1,3}) = K3
    }

    #[test]
    fn line_graph_of_min_degree_3_has_full_triangle_cover() {
        let (l, _) = complete(5).line_graph();
        assert!(l.triangle_free_edges().is_empty());
    }
}
