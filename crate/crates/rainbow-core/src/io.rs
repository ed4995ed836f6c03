//! Plain-text formats for graphs and colorings.
//!
//! Graph files:
//! ```text
//! # comment
//! p <n> <m>
//! e <u> <v>
//! ```
//!
//! Coloring files:
//! ```text
//! # comment
//! k <count>
//! c <u> <v> <color>
//! ```
//!
//! Vertices are 1-indexed on disk and shifted to the internal 0-based ids at
//! this boundary. Writers emit edges in canonical ascending order so equal
//! values serialize to identical bytes.

use crate::coloring::EdgeColoring;
use crate::graph::{EdgeId, Graph, GraphError};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: expected {expected}, found {found:?}")]
    Malformed {
        line: usize,
        expected: &'static str,
        found: String,
    },
    #[error("line {line}: vertex {value} outside 1..={n}")]
    VertexOutOfRange { line: usize, value: usize, n: usize },
    #[error("line {line}: color {color} outside 1..={k}")]
    ColorOutOfRange { line: usize, color: u32, k: u32 },
    #[error("line {line}: edge ({u},{v}) colored more than once")]
    DuplicateColor { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("header declares {declared} edges but {found} follow")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("missing `{0}` header line")]
    MissingHeader(&'static str),
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
}

/// Parse result for graph files; duplicate edge lines are merged, not fatal.
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub duplicates_merged: usize,
}

fn parse_usize(tok: &str, line: usize, expected: &'static str) -> Result<usize, FormatError> {
    tok.parse().map_err(|_| FormatError::Malformed {
        line,
        expected,
        found: tok.to_string(),
    })
}

/// Lines that carry content: everything except blanks and `#` comments.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_graph(text: &str) -> Result<ParsedGraph, FormatError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or(FormatError::MissingHeader("p"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "p" {
        return Err(FormatError::Malformed {
            line: header_line,
            expected: "`p <n> <m>` header",
            found: header.to_string(),
        });
    }
    let n = parse_usize(toks[1], header_line, "vertex count")?;
    let declared_m = parse_usize(toks[2], header_line, "edge count")?;

    let mut edges = Vec::new();
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != "e" {
            return Err(FormatError::Malformed {
                line,
                expected: "`e <u> <v>` edge line",
                found: l.to_string(),
            });
        }
        let u = parse_usize(toks[1], line, "edge endpoint")?;
        let v = parse_usize(toks[2], line, "edge endpoint")?;
        for value in [u, v] {
            if value == 0 || value > n {
                return Err(FormatError::VertexOutOfRange { line, value, n });
            }
        }
        if u == v {
            return Err(FormatError::SelfLoop { line, v: u });
        }
        edges.push((u - 1, v - 1));
    }
    if edges.len() != declared_m {
        return Err(FormatError::EdgeCountMismatch {
            declared: declared_m,
            found: edges.len(),
        });
    }
    let report = Graph::build(n, &edges).map_err(|source| FormatError::Graph { line: 0, source })?;
    Ok(ParsedGraph {
        graph: report.graph,
        duplicates_merged: report.duplicates_merged,
    })
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p {} {}", g.n(), g.m()).unwrap();
    for e in g.edges() {
        writeln!(out, "e {} {}", e.lo() + 1, e.hi() + 1).unwrap();
    }
    out
}

pub fn parse_coloring(text: &str) -> Result<EdgeColoring, FormatError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or(FormatError::MissingHeader("k"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 || toks[0] != "k" {
        return Err(FormatError::Malformed {
            line: header_line,
            expected: "`k <count>` header",
            found: header.to_string(),
        });
    }
    let k = parse_usize(toks[1], header_line, "color count")? as u32;

    let mut coloring = EdgeColoring::new(k);
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 4 || toks[0] != "c" {
            return Err(FormatError::Malformed {
                line,
                expected: "`c <u> <v> <color>` line",
                found: l.to_string(),
            });
        }
        let u = parse_usize(toks[1], line, "edge endpoint")?;
        let v = parse_usize(toks[2], line, "edge endpoint")?;
        let color = parse_usize(toks[3], line, "color")? as u32;
        if u == 0 || v == 0 {
            return Err(FormatError::VertexOutOfRange { line, value: 0, n: 0 });
        }
        if u == v {
            return Err(FormatError::SelfLoop { line, v: u });
        }
        if color == 0 || color > k {
            return Err(FormatError::ColorOutOfRange { line, color, k });
        }
        let edge = EdgeId::new(u - 1, v - 1);
        if coloring.get(edge).is_some() {
            return Err(FormatError::DuplicateColor { line, u, v });
        }
        coloring.set(edge, color);
    }
    // `set` grows k with the max color and colors were bounded by k above, so
    // the declared header value is preserved exactly.
    coloring.set_k(k.max(coloring.max_color()));
    Ok(coloring)
}

pub fn write_coloring(c: &EdgeColoring) -> String {
    let mut out = String::new();
    writeln!(out, "k {}", c.k()).unwrap();
    for (e, color) in c.iter() {
        writeln!(out, "c {} {} {}", e.lo() + 1, e.hi() + 1, color).unwrap();
    }
    out
}
