//! Rainbow-connectivity verification.
//!
//! The core routine runs a breadth-first search over `(vertex, color set)`
//! states: from `(v, S)` an edge `vw` of color `c` leads to `(w, S + c)` when
//! `c` is not already in `S`. Such a search finds rainbow walks, and a rainbow
//! walk from `s` to `t` always contains a rainbow path between them (cutting
//! the sub-walk between two visits of a repeated vertex keeps the color set a
//! subset of the original), so reachability here is exact.
//!
//! Color sets are `u32` bitmasks, which caps usable colors at
//! [`MAX_TRACKED_COLORS`](crate::coloring::MAX_TRACKED_COLORS).

use crate::coloring::{ColorSet, EdgeColoring, MAX_TRACKED_COLORS};
use crate::graph::{EdgeId, Graph};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("coloring misses {missing} graph edges, first ({},{})", first.lo(), first.hi())]
    PartialColoring { missing: usize, first: EdgeId },
    #[error("coloring covers {count} edges absent from the graph, first ({},{})", first.lo(), first.hi())]
    UnknownEdge { count: usize, first: EdgeId },
    #[error("coloring uses color {k}, above the tracking limit {max}")]
    TooManyColors { k: u32, max: u32 },
    #[error("vertex {0} is outside the graph")]
    VertexOutOfRange(usize),
    #[error("vertex sequence is not a simple path: {0}")]
    NotAPath(&'static str),
    #[error("branch {index} has {len} vertices, expected {expected}")]
    BranchShape {
        index: usize,
        len: usize,
        expected: usize,
    },
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Restrict paths to these colors; `None` allows the full palette.
    pub allowed: Option<ColorSet>,
    /// Check only these vertex pairs; `None` checks all pairs.
    pub pairs: Option<Vec<(usize, usize)>>,
    /// Record one rainbow path per connected pair that was checked.
    pub collect_paths: bool,
    /// Keep scanning after the first failure and list every failing pair.
    pub full_report: bool,
    /// Scan sources on the rayon pool. Output is identical to the serial scan.
    pub parallel: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub rainbow_connected: bool,
    /// Lexicographically smallest failing pair, endpoints ascending.
    pub witness: Option<(usize, usize)>,
    /// All failing pairs in ascending order; present under `full_report`.
    pub failing_pairs: Option<Vec<(usize, usize)>>,
    /// One rainbow path per connected checked pair; present under
    /// `collect_paths`. Keys are normalized `(lo, hi)` pairs and each path
    /// runs from `lo` to `hi`.
    pub paths: Option<BTreeMap<(usize, usize), Vec<usize>>>,
}

fn check_coloring(g: &Graph, coloring: &EdgeColoring) -> Result<(), VerifyError> {
    let unknown = coloring.unknown_to(g);
    if let Some(first) = unknown.first() {
        return Err(VerifyError::UnknownEdge {
            count: unknown.len(),
            first: *first,
        });
    }
    let missing = coloring.missing_on(g);
    if let Some(first) = missing.first() {
        return Err(VerifyError::PartialColoring {
            missing: missing.len(),
            first: *first,
        });
    }
    let max = coloring.max_color();
    if max > MAX_TRACKED_COLORS {
        return Err(VerifyError::TooManyColors {
            k: max,
            max: MAX_TRACKED_COLORS,
        });
    }
    Ok(())
}

/// Per-source scan result: for each target vertex, the color set of the first
/// rainbow walk that reached it, if any.
struct SourceScan {
    source: usize,
    reached: Vec<Option<u32>>,
    parents: Option<HashMap<(usize, u32), (usize, u32)>>,
}

fn scan_source(
    g: &Graph,
    coloring: &EdgeColoring,
    allowed_mask: u32,
    source: usize,
    want_parents: bool,
) -> SourceScan {
    let n = g.n();
    let mut reached: Vec<Option<u32>> = vec![None; n];
    reached[source] = Some(0);
    let mut seen: Vec<HashSet<u32>> = vec![HashSet::new(); n];
    seen[source].insert(0);
    let mut parents = want_parents.then(HashMap::new);
    let mut queue = VecDeque::new();
    queue.push_back((source, 0u32));
    let mut unreached = n - 1;
    'bfs: while let Some((v, mask)) = queue.pop_front() {
        for &w in g.neighbors(v) {
            let color = coloring.get(EdgeId::new(v, w)).expect("checked total");
            let bit = 1u32 << (color - 1);
            if bit & allowed_mask == 0 || mask & bit != 0 {
                continue;
            }
            let next = mask | bit;
            if !seen[w].insert(next) {
                continue;
            }
            if let Some(p) = parents.as_mut() {
                p.insert((w, next), (v, mask));
            }
            if reached[w].is_none() {
                reached[w] = Some(next);
                unreached -= 1;
                if unreached == 0 {
                    // Parent chains of every recorded first-reach state are
                    // already complete, so stopping here loses nothing.
                    break 'bfs;
                }
            }
            queue.push_back((w, next));
        }
    }
    SourceScan {
        source,
        reached,
        parents,
    }
}

/// Turn the parent-chain walk ending at `(t, mask)` into a simple path from
/// the scan source to `t`. Cutting the loop between two visits of a repeated
/// vertex drops colors, never adds them, so the result stays rainbow.
fn extract_path(scan: &SourceScan, t: usize) -> Vec<usize> {
    let parents = scan.parents.as_ref().expect("scan ran with parents");
    let mut walk = Vec::new();
    let mut state = (t, scan.reached[t].expect("t was reached"));
    walk.push(state.0);
    while state != (scan.source, 0) {
        state = parents[&state];
        walk.push(state.0);
    }
    walk.reverse();
    let mut position: HashMap<usize, usize> = HashMap::new();
    let mut path: Vec<usize> = Vec::new();
    for v in walk {
        if let Some(&p) = position.get(&v) {
            for cut in path.drain(p + 1..) {
                position.remove(&cut);
            }
        } else {
            position.insert(v, path.len());
            path.push(v);
        }
    }
    path
}

/// Decide rainbow connectivity of `g` under `coloring`.
///
/// The coloring must cover exactly the edges of `g` and use colors within the
/// tracking limit. The report is byte-for-byte deterministic for a given
/// input, with or without `parallel`.
pub fn rainbow_connected(
    g: &Graph,
    coloring: &EdgeColoring,
    options: &VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    check_coloring(g, coloring)?;
    let allowed_mask = options.allowed.as_ref().map_or(u32::MAX, ColorSet::mask);

    // Group the requested pairs by their smaller endpoint; rainbow paths are
    // reversible so one scan per distinct source covers both directions.
    let mut by_source: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    match &options.pairs {
        Some(pairs) => {
            for &(a, b) in pairs {
                for v in [a, b] {
                    if !g.has_vertex(v) {
                        return Err(VerifyError::VertexOutOfRange(v));
                    }
                }
                if a != b {
                    by_source.entry(a.min(b)).or_default().insert(a.max(b));
                }
            }
        }
        None => {
            for s in 0..g.n().saturating_sub(1) {
                by_source.insert(s, ((s + 1)..g.n()).collect());
            }
        }
    }

    let mut failing: Vec<(usize, usize)> = Vec::new();
    let mut paths: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let sources: Vec<(usize, BTreeSet<usize>)> = by_source.into_iter().collect();

    let consume = |scan: SourceScan, targets: &BTreeSet<usize>,
                       failing: &mut Vec<(usize, usize)>,
                       paths: &mut BTreeMap<(usize, usize), Vec<usize>>| {
        for &t in targets {
            if scan.reached[t].is_some() {
                if options.collect_paths {
                    paths.insert((scan.source, t), extract_path(&scan, t));
                }
            } else {
                failing.push((scan.source, t));
            }
        }
    };

    if options.parallel {
        let scans: Vec<SourceScan> = sources
            .par_iter()
            .map(|(s, _)| scan_source(g, coloring, allowed_mask, *s, options.collect_paths))
            .collect();
        for (scan, (_, targets)) in scans.into_iter().zip(&sources) {
            consume(scan, targets, &mut failing, &mut paths);
        }
    } else {
        for (s, targets) in &sources {
            let scan = scan_source(g, coloring, allowed_mask, *s, options.collect_paths);
            consume(scan, targets, &mut failing, &mut paths);
            if !failing.is_empty() && !options.full_report {
                break;
            }
        }
    }

    // Targets inside one source group come back ascending, and sources were
    // scanned ascending, so `failing` is already in lexicographic order.
    Ok(VerificationReport {
        rainbow_connected: failing.is_empty(),
        witness: failing.first().copied(),
        failing_pairs: options.full_report.then_some(failing),
        paths: options.collect_paths.then_some(paths),
    })
}

/// Check that `path` is a simple path in `g` whose edge colors are pairwise
/// distinct. Colors above the tracking limit are fine here; only the
/// reachability search needs bitmasks.
pub fn is_rainbow_path(
    g: &Graph,
    coloring: &EdgeColoring,
    path: &[usize],
) -> Result<bool, VerifyError> {
    if path.is_empty() {
        return Err(VerifyError::NotAPath("empty vertex sequence"));
    }
    for &v in path {
        if !g.has_vertex(v) {
            return Err(VerifyError::VertexOutOfRange(v));
        }
    }
    let distinct: BTreeSet<usize> = path.iter().copied().collect();
    if distinct.len() != path.len() {
        return Err(VerifyError::NotAPath("repeated vertex"));
    }
    let mut colors = BTreeSet::new();
    for pair in path.windows(2) {
        if !g.has_edge(pair[0], pair[1]) {
            return Err(VerifyError::NotAPath("consecutive vertices not adjacent"));
        }
        let edge = EdgeId::new(pair[0], pair[1]);
        let color = coloring.get(edge).ok_or(VerifyError::PartialColoring {
            missing: 1,
            first: edge,
        })?;
        if !colors.insert(color) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Look for two branches whose edge color sequences coincide.
///
/// Branches are equal-length vertex paths that all end at a common hub. When
/// two of them carry identical color sequences, the pair of their hub-adjacent
/// vertices is returned: with few colors those two vertices cannot be rainbow
/// connected, since the short routes between them reuse a matched color and
/// the detours are longer than the palette.
pub fn pigeonhole_witness(
    coloring: &EdgeColoring,
    branches: &[Vec<usize>],
) -> Result<Option<(usize, usize)>, VerifyError> {
    let expected = match branches.first() {
        Some(b) => b.len(),
        None => return Ok(None),
    };
    if expected < 2 {
        return Err(VerifyError::BranchShape {
            index: 0,
            len: expected,
            expected: 2,
        });
    }
    let mut seen: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for (index, branch) in branches.iter().enumerate() {
        if branch.len() != expected {
            return Err(VerifyError::BranchShape {
                index,
                len: branch.len(),
                expected,
            });
        }
        let mut sequence = Vec::with_capacity(expected - 1);
        for pair in branch.windows(2) {
            let edge = EdgeId::new(pair[0], pair[1]);
            let color = coloring.get(edge).ok_or(VerifyError::PartialColoring {
                missing: 1,
                first: edge,
            })?;
            sequence.push(color);
        }
        if let Some(&other) = seen.get(&sequence) {
            let a = branches[other][expected - 2];
            let b = branch[expected - 2];
            return Ok(Some((a.min(b), a.max(b))));
        }
        seen.insert(sequence, index);
    }
    Ok(None)
}
