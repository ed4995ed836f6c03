//! Edge colorings and small color sets.
//!
//! Colors are positive integers `1..=k`. Color-set search in the verifier
//! tracks used colors in a bitmask, which caps the palette width at
//! [`MAX_TRACKED_COLORS`].

use crate::graph::{EdgeId, Graph};
use std::collections::{BTreeMap, BTreeSet};

/// Widest palette the set-reachability verifier can track.
pub const MAX_TRACKED_COLORS: u32 = 30;

/// Set of colors drawn from `1..=MAX_TRACKED_COLORS`, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ColorSet(u32);

impl ColorSet {
    pub fn empty() -> Self {
        ColorSet(0)
    }

    /// The full palette `{1, ..., k}`.
    pub fn all_up_to(k: u32) -> Self {
        assert!(k <= MAX_TRACKED_COLORS);
        if k == 0 {
            ColorSet(0)
        } else {
            ColorSet(u32::MAX >> (32 - k))
        }
    }

    pub fn from_colors(colors: &[u32]) -> Self {
        let mut s = ColorSet::empty();
        for &c in colors {
            s.insert(c);
        }
        s
    }

    pub fn insert(&mut self, color: u32) {
        assert!(
            (1..=MAX_TRACKED_COLORS).contains(&color),
            "color {color} outside 1..={MAX_TRACKED_COLORS}"
        );
        self.0 |= 1 << (color - 1);
    }

    pub fn contains(&self, color: u32) -> bool {
        (1..=MAX_TRACKED_COLORS).contains(&color) && self.0 & (1 << (color - 1)) != 0
    }

    pub fn is_superset_of(&self, other: &ColorSet) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (1..=MAX_TRACKED_COLORS).filter(|&c| self.contains(c))
    }

    pub fn mask(&self) -> u32 {
        self.0
    }
}

/// Assignment of colors to edges, together with a declared palette size `k`.
///
/// The assignment is keyed by canonical [`EdgeId`], so a coloring can be
/// checked against any graph; totality is a property of the (graph, coloring)
/// pair, not of the coloring alone. Invariant: every assigned color lies in
/// `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    k: u32,
    assignments: BTreeMap<EdgeId, u32>,
}

impl EdgeColoring {
    /// Empty coloring with a declared palette of size `k`.
    pub fn new(k: u32) -> Self {
        EdgeColoring {
            k,
            assignments: BTreeMap::new(),
        }
    }

    /// Builds from entries, declaring `k` as the maximum color used.
    pub fn from_entries<I: IntoIterator<Item = (EdgeId, u32)>>(entries: I) -> Self {
        let assignments: BTreeMap<EdgeId, u32> = entries.into_iter().collect();
        let k = assignments.values().copied().max().unwrap_or(0);
        for (&e, &c) in &assignments {
            assert!(c >= 1, "edge ({},{}) colored 0", e.lo(), e.hi());
        }
        EdgeColoring { k, assignments }
    }

    /// Assigns a color, growing `k` if needed. Colors must be positive.
    pub fn set(&mut self, edge: EdgeId, color: u32) {
        assert!(color >= 1, "colors are 1-based");
        self.k = self.k.max(color);
        self.assignments.insert(edge, color);
    }

    /// Raises the declared palette size. Panics below the current maximum.
    pub fn set_k(&mut self, k: u32) {
        assert!(k >= self.max_color(), "k below a used color");
        self.k = k;
    }

    pub fn get(&self, edge: EdgeId) -> Option<u32> {
        self.assignments.get(&edge).copied()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, u32)> + '_ {
        self.assignments.iter().map(|(&e, &c)| (e, c))
    }

    pub fn max_color(&self) -> u32 {
        self.assignments.values().copied().max().unwrap_or(0)
    }

    pub fn colors_used(&self) -> BTreeSet<u32> {
        self.assignments.values().copied().collect()
    }

    pub fn distinct_colors(&self) -> usize {
        self.colors_used().len()
    }

    /// True when every edge of `g` has a color.
    pub fn is_total_on(&self, g: &Graph) -> bool {
        g.edges().iter().all(|e| self.assignments.contains_key(e))
    }

    /// Edges of `g` missing a color, canonical order.
    pub fn missing_on(&self, g: &Graph) -> Vec<EdgeId> {
        g.edges()
            .iter()
            .copied()
            .filter(|e| !self.assignments.contains_key(e))
            .collect()
    }

    /// Colored edges that `g` does not contain, canonical order.
    pub fn unknown_to(&self, g: &Graph) -> Vec<EdgeId> {
        self.assignments
            .keys()
            .copied()
            .filter(|e| !g.has_edge(e.lo(), e.hi()))
            .collect()
    }
}
