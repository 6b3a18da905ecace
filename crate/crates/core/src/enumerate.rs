//! Isomorph-free enumeration of free trees, plus a labeled-tree oracle.
//!
//! Free trees are generated by the successor algorithm of Wright, Richmond,
//! Odlyzko and McKay on canonical level sequences: constant amortized work
//! per tree and O(n) memory, so no dedup tables are needed. Each isomorphism
//! class is emitted exactly once, in a deterministic order for a fixed order
//! `n`. The labeled oracle decodes all `n^(n-2)` Prüfer sequences and is used
//! to cross-validate the generator on small orders.

use crate::tree::Tree;
use rand::Rng;
use thiserror::Error;

/// Practical budget for free-tree enumeration.
pub const FREE_TREE_ORDER_LIMIT: usize = 26;
/// `9^7` labeled trees is the largest oracle scan we accept.
pub const LABELED_TREE_ORDER_LIMIT: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("order {order} exceeds the enumeration budget {limit}")]
    BudgetExceeded { order: usize, limit: usize },
    #[error("order {order} exceeds the labeled-tree scan bound {limit}")]
    TooLarge { order: usize, limit: usize },
}

/// Level sequence ("layout") of a rooted tree in preorder; `layout[0] = 0`.
type Layout = Vec<usize>;

fn initial_layout(n: usize) -> Layout {
    // The path graph rooted at its center.
    let mut layout: Layout = (0..=n / 2).collect();
    layout.extend(1..(n + 1) / 2);
    layout
}

/// One step of the Beyer-Hedetniemi successor for rooted level sequences.
fn next_rooted_tree(layout: &[usize], p: Option<usize>) -> Option<Layout> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = layout.len() - 1;
            while layout[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while layout[q] != layout[p] - 1 {
        q -= 1;
    }
    // Repeat the block starting at q with period p - q over the tail.
    let period = p - q;
    let mut result = layout.to_vec();
    for i in p..result.len() {
        result[i] = result[i - period];
    }
    Some(result)
}

/// Splits a layout into the root's leftmost subtree (levels shifted down by
/// one) and the remaining tree.
fn split_layout(layout: &[usize]) -> (Layout, Layout) {
    let mut second_one = layout.len();
    let mut one_found = false;
    for (i, &level) in layout.iter().enumerate() {
        if level == 1 {
            if one_found {
                second_one = i;
                break;
            }
            one_found = true;
        }
    }
    let left = layout[1..second_one].iter().map(|&l| l - 1).collect();
    let mut rest: Layout = vec![0];
    rest.extend_from_slice(&layout[second_one..]);
    (left, rest)
}

/// One iteration of the Wright-Richmond-Odlyzko-McKay algorithm: returns the
/// given layout if it is a canonical free-tree representation, otherwise
/// jumps directly to the next layout that is.
fn next_free_tree(layout: Layout) -> Layout {
    let (left, rest) = split_layout(&layout);
    let left_height = left.iter().copied().max().unwrap_or(0);
    let rest_height = rest.iter().copied().max().unwrap_or(0);
    let mut valid = rest_height >= left_height;
    if valid && rest_height == left_height {
        if left.len() > rest.len() {
            valid = false;
        } else if left.len() == rest.len() && left > rest {
            valid = false;
        }
    }
    if valid {
        return layout;
    }
    let p = left.len();
    let mut next = next_rooted_tree(&layout, Some(p)).expect("p > 0 inside a layout");
    if layout[p] > 2 {
        let (new_left, _) = split_layout(&next);
        let new_left_height = new_left.iter().copied().max().unwrap_or(0);
        let suffix_len = new_left_height + 1;
        let start = next.len() - suffix_len;
        for (offset, slot) in next[start..].iter_mut().enumerate() {
            *slot = offset + 1;
        }
    }
    next
}

fn layout_to_tree(layout: &[usize]) -> Tree {
    let n = layout.len();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut stack: Vec<usize> = Vec::new();
    for (i, &level) in layout.iter().enumerate() {
        while let Some(&j) = stack.last() {
            if layout[j] >= level {
                stack.pop();
            } else {
                edges.push((j, i));
                break;
            }
        }
        stack.push(i);
    }
    Tree::from_edges(n, &edges).expect("layout describes a tree")
}

/// Deterministic, resumable stream of pairwise non-isomorphic trees of a
/// fixed order, optionally filtered by stability number.
///
/// A stream is single-consumer; [`TreeStream::partition`] splits it into
/// disjoint sub-streams over consecutive cursor ranges for parallel
/// consumption.
pub struct TreeStream {
    n: usize,
    alpha: Option<usize>,
    /// Next canonical layout to emit, if any. `None` once exhausted.
    cursor: Option<Layout>,
    /// Exclusive end of this sub-stream's range.
    stop: Option<Layout>,
    /// Single-vertex special case flag (the layout machinery needs n >= 2).
    tiny_pending: bool,
}

impl TreeStream {
    fn fresh(n: usize, alpha: Option<usize>) -> TreeStream {
        if n == 1 {
            return TreeStream {
                n,
                alpha,
                cursor: None,
                stop: None,
                tiny_pending: true,
            };
        }
        TreeStream {
            n,
            alpha,
            cursor: Some(next_free_tree(initial_layout(n))),
            stop: None,
            tiny_pending: false,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Advances to the next canonical layout regardless of the alpha filter.
    fn next_layout(&mut self) -> Option<Layout> {
        let current = self.cursor.take()?;
        if let Some(stop) = &self.stop {
            if &current == stop {
                return None;
            }
        }
        self.cursor = next_rooted_tree(&current, None).map(next_free_tree);
        Some(current)
    }

    /// Splits the remaining stream into at most `parts` disjoint sub-streams
    /// covering consecutive ranges of the generation order. A cheap pre-pass
    /// (generation only, no per-tree work) locates the range boundaries.
    pub fn partition(self, parts: usize) -> Vec<TreeStream> {
        if self.n == 1 || parts <= 1 {
            return vec![self];
        }
        let mut probe = TreeStream {
            n: self.n,
            alpha: None,
            cursor: self.cursor.clone(),
            stop: self.stop.clone(),
            tiny_pending: false,
        };
        let mut total = 0usize;
        while probe.next_layout().is_some() {
            total += 1;
        }
        if total == 0 {
            return Vec::new();
        }
        let parts = parts.min(total);
        let chunk = total.div_ceil(parts);
        let mut probe = TreeStream {
            n: self.n,
            alpha: None,
            cursor: self.cursor.clone(),
            stop: self.stop.clone(),
            tiny_pending: false,
        };
        let mut boundaries = Vec::with_capacity(parts);
        let mut index = 0usize;
        while let Some(layout) = probe.next_layout() {
            if index % chunk == 0 {
                boundaries.push(layout);
            }
            index += 1;
        }
        let mut streams = Vec::with_capacity(boundaries.len());
        for (i, start) in boundaries.iter().enumerate() {
            let stop = boundaries.get(i + 1).cloned().or_else(|| self.stop.clone());
            streams.push(TreeStream {
                n: self.n,
                alpha: self.alpha,
                cursor: Some(start.clone()),
                stop,
                tiny_pending: false,
            });
        }
        streams
    }
}

impl Iterator for TreeStream {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.tiny_pending {
            self.tiny_pending = false;
            let single = Tree::from_edges(1, &[]).expect("single vertex");
            match self.alpha {
                Some(a) if a != 1 => return None,
                _ => return Some(single),
            }
        }
        loop {
            let layout = self.next_layout()?;
            let tree = layout_to_tree(&layout);
            match self.alpha {
                Some(a) if crate::tree::stability_number(&tree) != a => continue,
                _ => return Some(tree),
            }
        }
    }
}

/// All isomorphism classes of trees on `n` vertices, each exactly once.
pub fn enumerate_free_trees(n: usize) -> Result<TreeStream, EnumError> {
    if n == 0 || n > FREE_TREE_ORDER_LIMIT {
        return Err(EnumError::BudgetExceeded {
            order: n,
            limit: FREE_TREE_ORDER_LIMIT,
        });
    }
    Ok(TreeStream::fresh(n, None))
}

/// Sub-stream of [`enumerate_free_trees`] with the given stability number.
/// Out-of-range `alpha` just yields an empty stream.
pub fn trees_with_alpha(n: usize, alpha: usize) -> Result<TreeStream, EnumError> {
    if n == 0 || n > FREE_TREE_ORDER_LIMIT {
        return Err(EnumError::BudgetExceeded {
            order: n,
            limit: FREE_TREE_ORDER_LIMIT,
        });
    }
    Ok(TreeStream::fresh(n, Some(alpha)))
}

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`) into a tree.
pub fn prufer_decode(n: usize, seq: &[usize]) -> Tree {
    assert!(n >= 2 && seq.len() == n - 2);
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("leaf exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Tree::from_edges(n, &edges).expect("Prüfer decoding yields a tree")
}

/// Every labeled tree on `{0..n-1}` exactly once, via all Prüfer sequences.
pub fn enumerate_labeled_trees(n: usize) -> Result<impl Iterator<Item = Tree>, EnumError> {
    if n == 0 || n > LABELED_TREE_ORDER_LIMIT {
        return Err(EnumError::TooLarge {
            order: n,
            limit: LABELED_TREE_ORDER_LIMIT,
        });
    }
    let mut seq = if n >= 3 { Some(vec![0usize; n - 2]) } else { None };
    let mut tiny_pending = n < 3;
    Ok(std::iter::from_fn(move || {
        if tiny_pending {
            tiny_pending = false;
            return Some(if n == 1 {
                Tree::from_edges(1, &[]).unwrap()
            } else {
                Tree::from_edges(2, &[(0, 1)]).unwrap()
            });
        }
        let current = seq.as_ref()?.clone();
        let tree = prufer_decode(n, &current);
        // odometer step
        let digits = seq.as_mut().unwrap();
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                seq = None;
                break;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < n {
                break;
            }
            digits[pos] = 0;
        }
        Some(tree)
    }))
}

/// Uniformly random labeled tree on `n` vertices (random Prüfer sequence).
pub fn random_labeled_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tree {
    if n == 1 {
        return Tree::from_edges(1, &[]).unwrap();
    }
    if n == 2 {
        return Tree::from_edges(2, &[(0, 1)]).unwrap();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(n, &seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_code;
    use crate::tree::stability_number;
    use std::collections::BTreeSet;

    /// A000055: free trees on n vertices, n = 1..=16.
    const FREE_TREE_COUNTS: [usize; 16] = [
        1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320,
    ];

    #[test]
    fn free_tree_counts_match_known_values() {
        for (i, &expected) in FREE_TREE_COUNTS.iter().enumerate().take(12) {
            let n = i + 1;
            assert_eq!(enumerate_free_trees(n).unwrap().count(), expected, "n={n}");
        }
    }

    #[test]
    fn emitted_trees_are_pairwise_nonisomorphic() {
        for n in 1..=10 {
            let mut codes = BTreeSet::new();
            for tree in enumerate_free_trees(n).unwrap() {
                assert_eq!(tree.order(), n);
                assert!(codes.insert(canonical_code(&tree)), "duplicate at n={n}");
            }
            assert_eq!(codes.len(), FREE_TREE_COUNTS[n - 1]);
        }
    }

    #[test]
    fn prufer_oracle_agrees_with_generator() {
        for n in 1..=8 {
            let labeled: BTreeSet<_> = enumerate_labeled_trees(n)
                .unwrap()
                .map(|t| canonical_code(&t))
                .collect();
            let free: BTreeSet<_> = enumerate_free_trees(n)
                .unwrap()
                .map(|t| canonical_code(&t))
                .collect();
            assert_eq!(labeled, free, "n={n}");
        }
    }

    #[test]
    fn labeled_tree_counts_are_cayley() {
        assert_eq!(enumerate_labeled_trees(3).unwrap().count(), 3);
        assert_eq!(enumerate_labeled_trees(4).unwrap().count(), 16);
        assert_eq!(enumerate_labeled_trees(5).unwrap().count(), 125);
    }

    #[test]
    fn alpha_filter_examples() {
        let collect_codes = |n, a| -> BTreeSet<_> {
            trees_with_alpha(n, a)
                .unwrap()
                .map(|t| canonical_code(&t))
                .collect()
        };
        let five_three = collect_codes(5, 3);
        assert_eq!(five_three.len(), 2);
        assert!(five_three.contains(&canonical_code(&Tree::path(5))));
        let five_four = collect_codes(5, 4);
        assert_eq!(five_four.len(), 1);
        assert!(five_four.contains(&canonical_code(&Tree::star(5))));
        assert!(collect_codes(4, 1).is_empty());
    }

    #[test]
    fn partition_preserves_the_stream() {
        for n in [7usize, 9, 10] {
            let sequential: Vec<_> = enumerate_free_trees(n)
                .unwrap()
                .map(|t| canonical_code(&t))
                .collect();
            for parts in [1usize, 2, 3, 7] {
                let mut merged = Vec::new();
                for sub in enumerate_free_trees(n).unwrap().partition(parts) {
                    merged.extend(sub.map(|t| canonical_code(&t)));
                }
                assert_eq!(merged, sequential, "n={n} parts={parts}");
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(enumerate_free_trees(FREE_TREE_ORDER_LIMIT + 1).is_err());
        assert!(enumerate_labeled_trees(LABELED_TREE_ORDER_LIMIT + 1).is_err());
        assert!(enumerate_free_trees(0).is_err());
    }

    #[test]
    fn alpha_filter_matches_per_tree_filtering() {
        for n in 2..=9 {
            for alpha in 1..n {
                let direct: usize = enumerate_free_trees(n)
                    .unwrap()
                    .filter(|t| stability_number(t) == alpha)
                    .count();
                let filtered = trees_with_alpha(n, alpha).unwrap().count();
                assert_eq!(direct, filtered, "n={n} alpha={alpha}");
            }
        }
    }

    #[test]
    fn random_labeled_tree_is_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.gen_range(1..=24);
            let t = random_labeled_tree(n, &mut rng);
            assert_eq!(t.order(), n);
        }
    }
}
