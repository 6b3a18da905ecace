//! Text formats: the edge-list tree format and DOT exports.
//!
//! Edge-list format, bit-exact on emission: line 1 is the decimal order `n`;
//! the next `n - 1` lines are `"u v"` with `0 <= u < v < n`, space-separated,
//! LF line endings. Lines beginning with `#` are ignored.

use crate::stars::CenterTree;
use crate::tree::{Tree, TreeError};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("not a tree: {0}")]
    NotATree(#[from] TreeError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses one tree in edge-list format. Trailing non-comment content is an
/// error.
pub fn parse_edge_list(text: &str) -> Result<Tree, IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty());
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "missing order line"))?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| parse_err(lineno, format!("bad order {header:?}")))?;
    if n == 0 {
        return Err(parse_err(lineno, "order must be at least 1"));
    }
    let mut edges = Vec::with_capacity(n - 1);
    for _ in 0..n - 1 {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| parse_err(0, format!("expected {} edge lines", n - 1)))?;
        let mut parts = line.split_whitespace();
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => return Err(parse_err(lineno, format!("bad edge line {line:?}"))),
        };
        let u: usize = u
            .parse()
            .map_err(|_| parse_err(lineno, format!("bad vertex {u:?}")))?;
        let v: usize = v
            .parse()
            .map_err(|_| parse_err(lineno, format!("bad vertex {v:?}")))?;
        if u >= v {
            return Err(parse_err(lineno, format!("edges need u < v, got {u} {v}")));
        }
        edges.push((u, v));
    }
    if let Some((lineno, line)) = lines.next() {
        return Err(parse_err(lineno, format!("unexpected trailing line {line:?}")));
    }
    Ok(Tree::from_edges(n, &edges)?)
}

/// Emits the tree in edge-list format (edges sorted, `u < v`, LF endings).
pub fn format_edge_list(tree: &Tree) -> String {
    let mut out = String::new();
    writeln!(out, "{}", tree.order()).unwrap();
    for (u, v) in tree.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn read_tree(path: &Path) -> Result<Tree, IoError> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

/// DOT rendering with centers drawn white-filled and all other vertices
/// black-filled.
pub fn tree_to_dot(tree: &Tree, centers: &BTreeSet<usize>) -> String {
    let mut out = String::from("graph tree {\n  node [shape=circle, style=filled];\n");
    for v in 0..tree.order() {
        if centers.contains(&v) {
            writeln!(out, "  {v} [fillcolor=white];").unwrap();
        } else {
            writeln!(out, "  {v} [fillcolor=black, fontcolor=white];").unwrap();
        }
    }
    for (u, v) in tree.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// DOT rendering of a center-tree: node text is the star size, light centers
/// white, heavy centers black.
pub fn center_tree_to_dot(ct: &CenterTree, heavy_size: usize) -> String {
    let mut out = String::from("graph center_tree {\n  node [shape=circle, style=filled];\n");
    for (c, &label) in ct.labels().iter().enumerate() {
        if label == heavy_size {
            writeln!(out, "  {c} [label=\"{label}\", fillcolor=black, fontcolor=white];").unwrap();
        } else {
            writeln!(out, "  {c} [label=\"{label}\", fillcolor=white];").unwrap();
        }
    }
    for (u, v) in ct.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
