//! Isomorphism-invariant canonical codes for trees.
//!
//! The code is a balanced-parenthesis string obtained by rooting the tree at
//! its centroid and encoding rooted subtrees bottom-up with children sorted
//! lexicographically. When the tree has two centroids the code is the
//! lexicographic minimum over both rootings, which treats the bicentroidal
//! edge symmetrically. Two trees have equal codes exactly when they are
//! isomorphic, and a code has length `2n`.

use crate::tree::{Tree, TreeError};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Order of the encoded tree.
    pub fn order(&self) -> usize {
        self.0.len() / 2
    }

    /// Rebuilds a tree from the code. Vertices are numbered in preorder, so
    /// the result is one concrete representative of the isomorphism class.
    pub fn decode(&self) -> Result<Tree, TreeError> {
        let mut edges = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        let mut next = 0usize;
        for ch in self.0.chars() {
            match ch {
                '(' => {
                    if let Some(&parent) = stack.last() {
                        edges.push((parent, next));
                    }
                    stack.push(next);
                    next += 1;
                }
                ')' => {
                    if stack.pop().is_none() {
                        return Err(TreeError::Disconnected);
                    }
                }
                _ => return Err(TreeError::Disconnected),
            }
        }
        if !stack.is_empty() {
            return Err(TreeError::Disconnected);
        }
        Tree::from_edges(next, &edges)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The centroid(s) of the tree: one vertex, or two adjacent ones.
pub(crate) fn centroids(tree: &Tree) -> Vec<usize> {
    let n = tree.order();
    if n == 1 {
        return vec![0];
    }
    let (order, parent) = dfs_order(tree.adjacency(), 0);
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if parent[v] != usize::MAX {
            size[parent[v]] += size[v];
        }
    }
    let mut best = Vec::new();
    for v in 0..n {
        let mut largest = n - size[v];
        for &w in tree.neighbors(v) {
            if parent[w] == v {
                largest = largest.max(size[w]);
            }
        }
        if largest * 2 <= n {
            best.push(v);
        }
    }
    best.sort_unstable();
    debug_assert!(matches!(best.len(), 1 | 2));
    best
}

fn dfs_order(adj: &[Vec<usize>], root: usize) -> (Vec<usize>, Vec<usize>) {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    seen[root] = true;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                order.push(w);
            }
        }
    }
    (order, parent)
}

/// Canonical parenthesis code of the rooted tree, children sorted by code.
/// `label` optionally injects a per-vertex decimal label right after each
/// opening parenthesis, for label-aware isomorphism (center-trees).
pub(crate) fn rooted_code(adj: &[Vec<usize>], root: usize, label: Option<&[usize]>) -> String {
    let (order, parent) = dfs_order(adj, root);
    let n = adj.len();
    let mut codes: Vec<String> = vec![String::new(); n];
    let mut children_codes: Vec<Vec<String>> = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        let mut parts = std::mem::take(&mut children_codes[v]);
        parts.sort_unstable();
        let mut code = String::from("(");
        if let Some(labels) = label {
            code.push_str(&labels[v].to_string());
        }
        for part in parts {
            code.push_str(&part);
        }
        code.push(')');
        if parent[v] != usize::MAX {
            children_codes[parent[v]].push(std::mem::take(&mut code));
        } else {
            codes[v] = code;
        }
    }
    std::mem::take(&mut codes[root])
}

/// Isomorphism-invariant code of the tree; stable across runs.
pub fn canonical_code(tree: &Tree) -> CanonicalCode {
    let code = centroids(tree)
        .iter()
        .map(|&c| rooted_code(tree.adjacency(), c, None))
        .min()
        .expect("tree has a centroid");
    CanonicalCode(code)
}

/// Label-aware canonical code over an arbitrary adjacency (used for
/// center-trees, where node labels are star sizes).
pub(crate) fn canonical_code_labeled(tree: &Tree, labels: &[usize]) -> String {
    centroids(tree)
        .iter()
        .map(|&c| rooted_code(tree.adjacency(), c, Some(labels)))
        .min()
        .expect("tree has a centroid")
}
