//! Exact rainbow connection numbers by exhaustive search.
//!
//! For a fixed palette size k the solver enumerates colorings in canonical
//! form: edges are taken in their sorted order and edge i may only use colors
//! `1..=min(1 + max color used so far, k)`. Every coloring can be renamed to a
//! canonical one, and rainbow connectivity is invariant under renaming, so the
//! canonical sweep is exhaustive up to color symmetry. It also covers every
//! coloring with fewer than k colors, which is why exhausting level k-1
//! without a hit proves the rainbow connection number is at least k.
//!
//! [`exact_rc`] runs those levels by iterative deepening, starting at the
//! diameter (the trivial lower bound) and stopping at the first level with a
//! verified coloring.

use crate::coloring::{EdgeColoring, MAX_TRACKED_COLORS};
use crate::graph::{Graph, GraphError};
use crate::verify::{rainbow_connected, VerifyOptions};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("palette size {k} is above the tracking limit {max}")]
    KAboveLimit { k: u32, max: u32 },
}

/// Limits on a search. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_millis: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            max_millis: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Enumeration tree nodes visited.
    pub nodes: u64,
    /// Complete colorings handed to the verifier.
    pub colorings_verified: u64,
}

/// Result of one fixed-k level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelOutcome {
    /// Every canonical k-coloring was tried; none rainbow-connects the graph.
    Proven,
    /// A rainbow-connecting coloring with at most k colors, the first one in
    /// canonical order.
    Refuted(EdgeColoring),
    /// The budget ran out before the level finished.
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RcStatus {
    /// `value` is the rainbow connection number.
    Exact,
    /// All levels up to the requested maximum were exhausted without a hit;
    /// only `lower_bound` is known.
    LowerBoundOnly,
    /// The budget ran out; only `lower_bound` is known.
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RcResult {
    pub status: RcStatus,
    /// Best proven lower bound on the rainbow connection number.
    pub lower_bound: u32,
    /// The exact value, when `status` is [`RcStatus::Exact`].
    pub value: Option<u32>,
    /// A verified coloring attaining `value`.
    pub coloring: Option<EdgeColoring>,
    pub stats: SearchStats,
}

struct SearchCtx {
    stats: SearchStats,
    max_nodes: Option<u64>,
    started: Instant,
    max_millis: Option<u64>,
}

impl SearchCtx {
    fn new(budget: &Budget) -> Self {
        SearchCtx {
            stats: SearchStats::default(),
            max_nodes: budget.max_nodes,
            started: Instant::now(),
            max_millis: budget.max_millis,
        }
    }

    fn out_of_budget(&self) -> bool {
        if let Some(limit) = self.max_nodes {
            if self.stats.nodes >= limit {
                return true;
            }
        }
        if let Some(limit) = self.max_millis {
            // Clock checks are expensive relative to a tree node; sample.
            if self.stats.nodes % 256 == 0
                && self.started.elapsed().as_millis() as u64 >= limit
            {
                return true;
            }
        }
        false
    }
}

enum SearchStep {
    Found(EdgeColoring),
    Exhausted,
    OutOfBudget,
}

fn descend(
    g: &Graph,
    k: u32,
    idx: usize,
    max_used: u32,
    colors: &mut Vec<u32>,
    ctx: &mut SearchCtx,
) -> SearchStep {
    ctx.stats.nodes += 1;
    if ctx.out_of_budget() {
        return SearchStep::OutOfBudget;
    }
    if idx == g.m() {
        ctx.stats.colorings_verified += 1;
        let coloring = EdgeColoring::from_entries(
            g.edges().iter().copied().zip(colors.iter().copied()),
        );
        let report = rainbow_connected(g, &coloring, &VerifyOptions::default())
            .expect("enumerated colorings are total and within the color limit");
        if report.rainbow_connected {
            return SearchStep::Found(coloring);
        }
        return SearchStep::Exhausted;
    }
    for color in 1..=(max_used + 1).min(k) {
        colors[idx] = color;
        match descend(g, k, idx + 1, max_used.max(color), colors, ctx) {
            SearchStep::Exhausted => {}
            step => return step,
        }
    }
    SearchStep::Exhausted
}

fn run_level(g: &Graph, k: u32, ctx: &mut SearchCtx) -> LevelOutcome {
    let mut colors = vec![0u32; g.m()];
    match descend(g, k, 0, 0, &mut colors, ctx) {
        SearchStep::Found(c) => LevelOutcome::Refuted(c),
        SearchStep::Exhausted => LevelOutcome::Proven,
        SearchStep::OutOfBudget => LevelOutcome::BudgetExhausted,
    }
}

/// Search every canonical k-coloring of `g` for one that rainbow-connects it.
pub fn no_k_coloring_exists(
    g: &Graph,
    k: u32,
    budget: &Budget,
) -> Result<(LevelOutcome, SearchStats), SolverError> {
    if k > MAX_TRACKED_COLORS {
        return Err(SolverError::KAboveLimit {
            k,
            max: MAX_TRACKED_COLORS,
        });
    }
    let mut ctx = SearchCtx::new(budget);
    let outcome = run_level(g, k, &mut ctx);
    Ok((outcome, ctx.stats))
}

/// Compute the rainbow connection number of a connected graph exactly, trying
/// palette sizes from the diameter up to `max_k`.
///
/// `max_k` is clamped to [`MAX_TRACKED_COLORS`]. A connected graph on n
/// vertices always has a rainbow-connecting coloring with n-1 colors (color a
/// spanning tree injectively), so any `max_k >= n-1` makes the search
/// complete in principle; the budget decides whether it finishes in practice.
pub fn exact_rc(g: &Graph, max_k: u32, budget: &Budget) -> Result<RcResult, SolverError> {
    let metrics = g.metrics()?;
    let diameter = metrics.diameter as u32;
    let effective_max = max_k.min(MAX_TRACKED_COLORS);

    let mut ctx = SearchCtx::new(budget);
    let mut lower_bound = diameter;
    let mut k = diameter;
    while k <= effective_max {
        match run_level(g, k, &mut ctx) {
            LevelOutcome::Refuted(coloring) => {
                return Ok(RcResult {
                    status: RcStatus::Exact,
                    lower_bound: k,
                    value: Some(k),
                    coloring: Some(coloring),
                    stats: ctx.stats,
                });
            }
            LevelOutcome::Proven => {
                lower_bound = k + 1;
            }
            LevelOutcome::BudgetExhausted => {
                return Ok(RcResult {
                    status: RcStatus::BudgetExhausted,
                    lower_bound,
                    value: None,
                    coloring: None,
                    stats: ctx.stats,
                });
            }
        }
        k += 1;
    }
    Ok(RcResult {
        status: RcStatus::LowerBoundOnly,
        lower_bound,
        value: None,
        coloring: None,
        stats: ctx.stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;

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

    fn solve(g: &Graph) -> RcResult {
        exact_rc(g, MAX_TRACKED_COLORS, &Budget::unlimited()).unwrap()
    }

    #[test]
    fn known_values_on_small_graphs() {
        for n in 2..=6 {
            let r = solve(&complete(n));
            assert_eq!((r.status, r.value), (RcStatus::Exact, Some(1)), "K{n}");
        }
        for n in 2..=6 {
            let r = solve(&path(n));
            assert_eq!(
                (r.status, r.value),
                (RcStatus::Exact, Some(n as u32 - 1)),
                "P{n}"
            );
        }
        assert_eq!(solve(&cycle(4)).value, Some(2));
        assert_eq!(solve(&cycle(5)).value, Some(3));
        assert_eq!(solve(&cycle(6)).value, Some(3));
    }

    #[test]
    fn single_vertex_needs_zero_colors() {
        let g = Graph::from_edges(1, &[]);
        let r = solve(&g);
        assert_eq!((r.status, r.value), (RcStatus::Exact, Some(0)));
        assert!(r.coloring.unwrap().is_empty());
    }

    #[test]
    fn returned_coloring_is_verified_and_within_palette() {
        let g = cycle(6);
        let r = solve(&g);
        let c = r.coloring.unwrap();
        assert!(c.max_color() <= r.value.unwrap());
        let report = rainbow_connected(&g, &c, &VerifyOptions::default()).unwrap();
        assert!(report.rainbow_connected);
    }

    #[test]
    fn agrees_with_uncanonicalized_bruteforce() {
        let samples = [
            path(4),
            cycle(5),
            complete(4),
            // House: square with a roof triangle.
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4)]),
            // Star with one extra edge.
            Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (3, 4)]),
        ];
        for g in &samples {
            let fast = solve(g).value.unwrap();
            let slow = reference::rc_by_bruteforce(g, 6).unwrap();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn level_outcomes_on_c4() {
        let g = cycle(4);
        let (outcome, _) = no_k_coloring_exists(&g, 1, &Budget::unlimited()).unwrap();
        assert_eq!(outcome, LevelOutcome::Proven);
        let (outcome, stats) = no_k_coloring_exists(&g, 2, &Budget::unlimited()).unwrap();
        match outcome {
            LevelOutcome::Refuted(c) => {
                assert!(rainbow_connected(&g, &c, &VerifyOptions::default())
                    .unwrap()
                    .rainbow_connected);
            }
            other => panic!("expected a coloring, got {other:?}"),
        }
        assert!(stats.colorings_verified > 0);
        assert!(matches!(
            no_k_coloring_exists(&g, 31, &Budget::unlimited()),
            Err(SolverError::KAboveLimit { k: 31, max: 30 })
        ));
    }

    #[test]
    fn node_budget_cuts_the_search_off() {
        let g = cycle(6);
        let r = exact_rc(&g, 30, &Budget::nodes(5)).unwrap();
        assert_eq!(r.status, RcStatus::BudgetExhausted);
        assert_eq!(r.lower_bound, 3);
        assert_eq!(r.value, None);
        assert!(r.stats.nodes <= 6);
    }

    #[test]
    fn max_k_below_the_answer_reports_a_lower_bound() {
        // rc(C5) = 3 and diam(C5) = 2, so a cap of 2 exhausts one level and
        // proves the bound 3.
        let r = exact_rc(&cycle(5), 2, &Budget::unlimited()).unwrap();
        assert_eq!(r.status, RcStatus::LowerBoundOnly);
        assert_eq!(r.lower_bound, 3);

        // A cap below the diameter runs no level at all; the diameter is
        // still a valid bound.
        let r = exact_rc(&path(5), 2, &Budget::unlimited()).unwrap();
        assert_eq!(r.status, RcStatus::LowerBoundOnly);
        assert_eq!(r.lower_bound, 4);
    }

    #[test]
    fn disconnected_graphs_are_rejected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert!(matches!(
            exact_rc(&g, 4, &Budget::unlimited()),
            Err(SolverError::Graph(GraphError::Disconnected))
        ));
    }
}
