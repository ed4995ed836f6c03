//! Slow, obviously-correct reference implementations used to cross-check the
//! production verifier and solver.
//!
//! Everything here works by exhaustive enumeration: simple paths are listed
//! one by one with a DFS, and colorings are listed as base-k counters over the
//! edge list. Nothing is pruned, canonicalized, or memoized, so these routines
//! only scale to toy graphs, which is exactly what the tests need.

use crate::coloring::EdgeColoring;
use crate::graph::{EdgeId, Graph};
use std::collections::BTreeSet;

/// True when some simple path from `s` to `t` repeats no color, considering
/// only edges whose color lies in `allowed` when a restriction is given.
///
/// The coloring must assign a color to every edge of `g`; uncolored edges make
/// the question ill-posed and panic.
pub fn exists_rainbow_path_by_enumeration(
    g: &Graph,
    coloring: &EdgeColoring,
    s: usize,
    t: usize,
    allowed: Option<&BTreeSet<u32>>,
) -> bool {
    assert!(s < g.n() && t < g.n(), "endpoints must be vertices of g");
    if s == t {
        return true;
    }
    let mut visited = vec![false; g.n()];
    visited[s] = true;
    let mut colors_on_path = Vec::new();
    dfs(g, coloring, s, t, allowed, &mut visited, &mut colors_on_path)
}

fn dfs(
    g: &Graph,
    coloring: &EdgeColoring,
    at: usize,
    t: usize,
    allowed: Option<&BTreeSet<u32>>,
    visited: &mut Vec<bool>,
    colors_on_path: &mut Vec<u32>,
) -> bool {
    if at == t {
        return true;
    }
    for &next in g.neighbors(at) {
        if visited[next] {
            continue;
        }
        let color = coloring
            .get(EdgeId::new(at, next))
            .expect("coloring must be total on g");
        if colors_on_path.contains(&color) {
            continue;
        }
        if let Some(set) = allowed {
            if !set.contains(&color) {
                continue;
            }
        }
        visited[next] = true;
        colors_on_path.push(color);
        if dfs(g, coloring, next, t, allowed, visited, colors_on_path) {
            return true;
        }
        colors_on_path.pop();
        visited[next] = false;
    }
    false
}

/// True when every vertex pair of `g` is joined by some rainbow simple path.
pub fn rainbow_connected_by_enumeration(g: &Graph, coloring: &EdgeColoring) -> bool {
    for s in 0..g.n() {
        for t in (s + 1)..g.n() {
            if !exists_rainbow_path_by_enumeration(g, coloring, s, t, None) {
                return false;
            }
        }
    }
    true
}

/// Smallest number of colors that rainbow-connects `g`, found by trying every
/// one of the k^m colorings for k = 1, 2, ... up to `max_k`.
///
/// Returns `None` when no coloring with at most `max_k` colors works (for a
/// connected graph that means `max_k` is below the true value). The graph is
/// assumed connected; a single vertex needs zero colors.
pub fn rc_by_bruteforce(g: &Graph, max_k: u32) -> Option<u32> {
    if g.n() <= 1 {
        return Some(0);
    }
    let m = g.m();
    for k in 1..=max_k {
        // Base-k counter over the edge list: digit i is the color of edge i.
        let mut digits = vec![0u32; m];
        loop {
            let mut coloring = EdgeColoring::new(k);
            for (i, e) in g.edges().iter().enumerate() {
                coloring.set(*e, digits[i] + 1);
            }
            if rainbow_connected_by_enumeration(g, &coloring) {
                return Some(k);
            }
            let mut pos = 0;
            loop {
                if pos == m {
                    break;
                }
                digits[pos] += 1;
                if digits[pos] < k {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == m {
                break;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges)
    }

    #[test]
    fn rainbow_path_enumeration_on_a_square() {
        let g = cycle(4);
        // Opposite edges share a color: 1,2,1,2 around the cycle.
        let mut c = EdgeColoring::new(2);
        c.set(EdgeId::new(0, 1), 1);
        c.set(EdgeId::new(1, 2), 2);
        c.set(EdgeId::new(2, 3), 1);
        c.set(EdgeId::new(0, 3), 2);
        assert!(exists_rainbow_path_by_enumeration(&g, &c, 0, 2, None));
        assert!(rainbow_connected_by_enumeration(&g, &c));

        // Restricting to color 1 leaves only the edges (0,1) and (2,3).
        let only_one: BTreeSet<u32> = [1].into();
        assert!(!exists_rainbow_path_by_enumeration(&g, &c, 0, 2, Some(&only_one)));
        assert!(exists_rainbow_path_by_enumeration(&g, &c, 2, 3, Some(&only_one)));
    }

    #[test]
    fn monochromatic_path_fails_beyond_one_edge() {
        let g = path(4);
        let mut c = EdgeColoring::new(1);
        for e in g.edges() {
            c.set(*e, 1);
        }
        assert!(exists_rainbow_path_by_enumeration(&g, &c, 0, 1, None));
        assert!(!exists_rainbow_path_by_enumeration(&g, &c, 0, 2, None));
        assert!(!rainbow_connected_by_enumeration(&g, &c));
    }

    #[test]
    fn bruteforce_rc_on_small_graphs() {
        assert_eq!(rc_by_bruteforce(&complete(2), 3), Some(1));
        assert_eq!(rc_by_bruteforce(&complete(4), 3), Some(1));
        assert_eq!(rc_by_bruteforce(&path(3), 3), Some(2));
        assert_eq!(rc_by_bruteforce(&path(4), 4), Some(3));
        assert_eq!(rc_by_bruteforce(&cycle(4), 3), Some(2));
        assert_eq!(rc_by_bruteforce(&cycle(5), 4), Some(3));
        assert_eq!(rc_by_bruteforce(&cycle(6), 4), Some(3));
    }

    #[test]
    fn bruteforce_rc_reports_exhaustion() {
        // P4 needs 3 colors, so a budget of 2 proves nothing works.
        assert_eq!(rc_by_bruteforce(&path(4), 2), None);
    }

    #[test]
    fn single_vertex_needs_no_colors() {
        let g = Graph::from_edges(1, &[]);
        assert_eq!(rc_by_bruteforce(&g, 3), Some(0));
    }
}
