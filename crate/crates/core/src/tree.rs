//! Trees, forests, and exact stable-set counting.
//!
//! A [`Forest`] is a simple acyclic graph on vertices `0..n`; a [`Tree`] is a
//! connected forest. Counts are arbitrary-precision ([`Count`]): the star
//! `K_{1,n-1}` already has `2^{n-1} + 1` stable sets, which overflows any
//! fixed-width integer long before the orders this crate works with, and the
//! strict inequalities checked downstream require exactness.

use num::bigint::BigUint;
use num::{One, Zero};
use thiserror::Error;

/// Number of stable sets; always at least 1 (the empty set is stable).
pub type Count = BigUint;

/// Largest order accepted by [`count_stable_sets_bruteforce`].
pub const BRUTE_FORCE_ORDER_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("a tree on {order} vertices has {expected} edges, got {got}")]
    WrongEdgeCount {
        order: usize,
        expected: usize,
        got: usize,
    },
    #[error("edge set contains a cycle")]
    Cyclic,
    #[error("graph is not connected")]
    Disconnected,
    #[error("order {order} exceeds the brute-force scan bound {limit}")]
    TooLarge { order: usize, limit: usize },
}

/// A simple acyclic graph on vertices `0..n`. Immutable after construction.
///
/// Forests, not just trees, are the counting domain: the deletion recurrence
/// and the rotation decomposition both evaluate counts on multi-component
/// results of vertex deletions. The empty forest (`n = 0`) is allowed and has
/// exactly one stable set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Forest {
    adj: Vec<Vec<usize>>,
}

impl Forest {
    /// Builds a forest from an edge list, validating simplicity and acyclicity.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, TreeError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(TreeError::VertexOutOfRange {
                        vertex: w,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(TreeError::SelfLoop(u));
            }
            if adj[u].contains(&v) {
                return Err(TreeError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        let forest = Forest { adj };
        // n vertices, m edges, c components: acyclic iff m = n - c.
        if n - forest.component_count() != edges.len() {
            return Err(TreeError::Cyclic);
        }
        Ok(forest)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub(crate) fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    fn component_count(&self) -> usize {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut stack = Vec::new();
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// Induced subgraph on the vertices not in `removed`, renumbered in
    /// increasing order of the surviving original ids.
    pub fn delete(&self, removed: &[usize]) -> Forest {
        let n = self.order();
        let mut keep = vec![true; n];
        for &v in removed {
            keep[v] = false;
        }
        let mut rename = vec![usize::MAX; n];
        let mut next = 0;
        for v in 0..n {
            if keep[v] {
                rename[v] = next;
                next += 1;
            }
        }
        let mut adj = vec![Vec::new(); next];
        for v in 0..n {
            if !keep[v] {
                continue;
            }
            for &w in &self.adj[v] {
                if keep[w] {
                    adj[rename[v]].push(rename[w]);
                }
            }
        }
        Forest { adj }
    }

    /// Result of deleting `v` together with all its neighbors.
    pub fn delete_closed_neighborhood(&self, v: usize) -> Forest {
        let mut removed = self.adj[v].clone();
        removed.push(v);
        self.delete(&removed)
    }
}

/// A connected forest: exactly `n - 1` edges over vertices `0..n`, `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    forest: Forest,
}

impl std::ops::Deref for Tree {
    type Target = Forest;

    fn deref(&self) -> &Forest {
        &self.forest
    }
}

impl Tree {
    /// Validates and builds a tree: `n - 1` edges, simple, connected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, TreeError> {
        if n == 0 || edges.len() != n - 1 {
            return Err(TreeError::WrongEdgeCount {
                order: n,
                expected: n.saturating_sub(1),
                got: edges.len(),
            });
        }
        let forest = Forest::from_edges(n, edges)?;
        if forest.component_count() != 1 {
            return Err(TreeError::Disconnected);
        }
        Ok(Tree { forest })
    }

    /// Reinterprets a forest as a tree, checking connectivity.
    pub fn from_forest(forest: Forest) -> Result<Self, TreeError> {
        if forest.order() == 0 {
            return Err(TreeError::WrongEdgeCount {
                order: 0,
                expected: 0,
                got: 0,
            });
        }
        if forest.component_count() != 1 {
            return Err(TreeError::Disconnected);
        }
        Ok(Tree { forest })
    }

    pub fn as_forest(&self) -> &Forest {
        &self.forest
    }

    /// The path `P_n` (vertices in path order).
    pub fn path(n: usize) -> Tree {
        let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Tree::from_edges(n, &edges).expect("path is a tree")
    }

    /// The star `K_{1,n-1}` with center 0.
    pub fn star(n: usize) -> Tree {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        Tree::from_edges(n, &edges).expect("star is a tree")
    }

    pub fn is_path(&self) -> bool {
        (0..self.order()).all(|v| self.degree(v) <= 2)
    }

    /// Vertices of degree at most one. An isolated vertex counts as a leaf,
    /// so the single-vertex tree has one leaf.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.degree(v) <= 1).collect()
    }
}

/// Stable-set DP over the vertices of `adj` with `alive[v]` set. Counts the
/// stable sets of the induced subgraph, 1 for the empty selection.
///
/// Iterative on an explicit stack so path-like inputs of any order cannot
/// exhaust call depth.
pub(crate) fn count_on(adj: &[Vec<usize>], alive: &[bool]) -> Count {
    let n = adj.len();
    let mut total = Count::one();
    let mut visited = vec![false; n];
    // incl[v]: stable sets of v's subtree containing v;
    // excl[v]: stable sets of v's subtree avoiding v.
    let mut incl = vec![Count::one(); n];
    let mut excl = vec![Count::one(); n];
    let mut order = Vec::new();
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if !alive[root] || visited[root] {
            continue;
        }
        order.clear();
        visited[root] = true;
        parent[root] = usize::MAX;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in &adj[v] {
                if alive[w] && !visited[w] {
                    visited[w] = true;
                    parent[w] = v;
                    order.push(w);
                }
            }
        }
        for &v in order.iter().rev() {
            incl[v] = Count::one();
            excl[v] = Count::one();
            for &w in &adj[v] {
                if alive[w] && parent[w] == v {
                    let combined = &incl[w] + &excl[w];
                    incl[v] *= &excl[w];
                    excl[v] *= combined;
                }
            }
        }
        total *= &incl[root] + &excl[root];
    }
    total
}

/// Same traversal with (max size incl/excl) states instead of counts.
pub(crate) fn alpha_on(adj: &[Vec<usize>], alive: &[bool]) -> usize {
    let n = adj.len();
    let mut total = 0usize;
    let mut visited = vec![false; n];
    let mut incl = vec![0usize; n];
    let mut excl = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::new();
    for root in 0..n {
        if !alive[root] || visited[root] {
            continue;
        }
        order.clear();
        visited[root] = true;
        parent[root] = usize::MAX;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in &adj[v] {
                if alive[w] && !visited[w] {
                    visited[w] = true;
                    parent[w] = v;
                    order.push(w);
                }
            }
        }
        for &v in order.iter().rev() {
            incl[v] = 1;
            excl[v] = 0;
            for &w in &adj[v] {
                if alive[w] && parent[w] == v {
                    incl[v] += excl[w];
                    excl[v] += incl[w].max(excl[w]);
                }
            }
        }
        total += incl[root].max(excl[root]);
    }
    total
}

/// Number of stable sets of the forest, including the empty set.
///
/// Computed per component by a single rooted traversal maintaining, for each
/// vertex, the pair (count excluding the vertex, count including it);
/// component results are multiplied.
pub fn merrifield_simmons(forest: &Forest) -> Count {
    let alive = vec![true; forest.order()];
    count_on(forest.adjacency(), &alive)
}

/// Independent oracle: scans all `2^n` vertex subsets and counts those with
/// no internal edge. Rejects orders above [`BRUTE_FORCE_ORDER_LIMIT`].
pub fn count_stable_sets_bruteforce(forest: &Forest) -> Result<Count, TreeError> {
    let n = forest.order();
    if n > BRUTE_FORCE_ORDER_LIMIT {
        return Err(TreeError::TooLarge {
            order: n,
            limit: BRUTE_FORCE_ORDER_LIMIT,
        });
    }
    let edge_masks: Vec<u32> = forest
        .edges()
        .iter()
        .map(|&(u, v)| (1u32 << u) | (1u32 << v))
        .collect();
    let mut count = 0u64;
    for subset in 0..(1u64 << n) {
        let s = subset as u32;
        if edge_masks.iter().all(|&m| (s & m) != m) {
            count += 1;
        }
    }
    Ok(Count::from(count))
}

/// Maximum cardinality of a stable set of the tree.
pub fn stability_number(tree: &Tree) -> usize {
    let alive = vec![true; tree.order()];
    alpha_on(tree.adjacency(), &alive)
}

/// The unique partition of the tree's vertices into two stable sets, as
/// sorted vertex lists. The class containing vertex 0 comes first, so the
/// orientation is deterministic.
pub fn bipartition(tree: &Tree) -> (Vec<usize>, Vec<usize>) {
    let n = tree.order();
    let mut side = vec![false; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    seen[0] = true;
    queue.push_back(0);
    while let Some(v) = queue.pop_front() {
        for &w in tree.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                side[w] = !side[v];
                queue.push_back(w);
            }
        }
    }
    let a = (0..n).filter(|&v| !side[v]).collect();
    let b = (0..n).filter(|&v| side[v]).collect();
    (a, b)
}

/// `fibonacci(1) = fibonacci(2) = 1`; `F(P_n)` equals `fibonacci(n + 2)`.
pub fn fibonacci(k: usize) -> Count {
    let mut a = Count::zero();
    let mut b = Count::one();
    for _ in 0..k {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn chair() -> Tree {
        // center 0 adjacent to 1, 2, 3; edge 3-4
        Tree::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn from_edges_accepts_paths() {
        let t = Tree::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(t.order(), 2);
        let t = Tree::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(t.edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn from_edges_rejects_cycle() {
        // Four edges on four vertices: the edge count already gives it away.
        let err = Tree::from_edges(4, &[(0, 1), (2, 3), (1, 2), (0, 3)]).unwrap_err();
        assert!(matches!(err, TreeError::WrongEdgeCount { .. }));
        // Right edge count but a triangle plus an isolated vertex.
        let err = Tree::from_edges(4, &[(0, 1), (1, 2), (0, 2)]).unwrap_err();
        assert!(matches!(err, TreeError::Cyclic));
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(matches!(
            Tree::from_edges(3, &[(0, 1)]),
            Err(TreeError::WrongEdgeCount { .. })
        ));
        assert!(matches!(
            Tree::from_edges(3, &[(0, 1), (0, 1)]),
            Err(TreeError::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Tree::from_edges(3, &[(0, 1), (1, 3)]),
            Err(TreeError::VertexOutOfRange { vertex: 3, .. })
        ));
        assert!(matches!(
            Tree::from_edges(2, &[(1, 1)]),
            Err(TreeError::SelfLoop(1))
        ));
        let disconnected = Forest::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            Tree::from_forest(disconnected),
            Err(TreeError::Disconnected)
        ));
    }

    #[test]
    fn bruteforce_small_values() {
        assert_eq!(
            count_stable_sets_bruteforce(&Tree::path(1)).unwrap(),
            Count::from(2u32)
        );
        assert_eq!(
            count_stable_sets_bruteforce(&Tree::path(4)).unwrap(),
            Count::from(8u32)
        );
        assert_eq!(
            count_stable_sets_bruteforce(&Tree::star(4)).unwrap(),
            Count::from(9u32)
        );
        let empty = Forest::from_edges(0, &[]).unwrap();
        assert_eq!(count_stable_sets_bruteforce(&empty).unwrap(), Count::one());
    }

    #[test]
    fn bruteforce_rejects_large_orders() {
        let t = Tree::path(BRUTE_FORCE_ORDER_LIMIT + 1);
        assert!(matches!(
            count_stable_sets_bruteforce(&t),
            Err(TreeError::TooLarge { .. })
        ));
    }

    #[test]
    fn merrifield_simmons_examples() {
        assert_eq!(merrifield_simmons(&Tree::path(7)), Count::from(34u32));
        assert_eq!(merrifield_simmons(&Tree::star(5)), Count::from(17u32));
        let two_edges = Forest::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(merrifield_simmons(&two_edges), Count::from(9u32));
        let empty = Forest::from_edges(0, &[]).unwrap();
        assert_eq!(merrifield_simmons(&empty), Count::one());
    }

    #[test]
    fn paths_count_fibonacci() {
        for n in 1..=30 {
            assert_eq!(merrifield_simmons(&Tree::path(n)), fibonacci(n + 2), "P_{n}");
        }
    }

    #[test]
    fn star_count_formula() {
        // 2^{n-1} + 1; exercises orders past the 64-bit overflow point.
        for n in [5usize, 20, 63, 64, 65, 80] {
            let expected = (Count::one() << (n - 1)) + Count::one();
            assert_eq!(merrifield_simmons(&Tree::star(n)), expected);
        }
    }

    #[test]
    fn stability_number_examples() {
        assert_eq!(stability_number(&Tree::path(5)), 3);
        assert_eq!(stability_number(&Tree::star(5)), 4);
        assert_eq!(stability_number(&chair()), 3);
    }

    #[test]
    fn bipartition_examples() {
        let (a, b) = bipartition(&Tree::path(4));
        assert_eq!((a, b), (vec![0, 2], vec![1, 3]));
        let (a, b) = bipartition(&Tree::path(1));
        assert_eq!((a, b), (vec![0], vec![]));
        let (a, b) = bipartition(&Tree::star(4));
        assert_eq!((a, b), (vec![0], vec![1, 2, 3]));
    }

    #[test]
    fn deletion_recurrence_on_chair() {
        let t = chair();
        for v in 0..t.order() {
            let without = merrifield_simmons(&t.delete(&[v]));
            let without_nbhd = merrifield_simmons(&t.delete_closed_neighborhood(v));
            assert_eq!(merrifield_simmons(&t), without + without_nbhd);
        }
    }

    #[test]
    fn counting_deep_path_does_not_overflow_stack() {
        let t = Tree::path(200_000);
        assert!(merrifield_simmons(&t) > Count::zero());
    }
}
