//! Trees of stars: recognition, centers, balance, and center-trees.
//!
//! A tree of stars is a tree whose unique bipartition has one side containing
//! every leaf and no vertex of degree 3 or more; the other side is the set of
//! centers. Equivalently it is built inductively by joining leaves of smaller
//! trees of stars to a new center. A single vertex is a tree of stars with no
//! centers; the two-vertex path is not (it is an odd path).

use crate::canon::canonical_code_labeled;
use crate::enumerate::enumerate_free_trees;
use crate::tree::{stability_number, Tree, TreeError};
use itertools::Itertools;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("tree is not a tree of stars")]
    NotTreeOfStars,
    #[error("operation needs order >= 3, got {0}")]
    Degenerate(usize),
    #[error("no tree has order {n} and stability number {alpha}")]
    BadRange { n: usize, alpha: usize },
    #[error("label {label} at center {center} is below max(2, its center-tree degree {degree})")]
    InfeasibleLabels {
        center: usize,
        label: usize,
        degree: usize,
    },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Structural classification of a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureClass {
    /// Every leaf on the non-center side, non-centers of degree <= 2.
    TreeOfStars { centers: BTreeSet<usize> },
    /// Not a path, and attaching one pendant vertex at `exposed` yields a
    /// tree of stars. `exposed` is the unique center that is also a leaf.
    AlmostTreeOfStars {
        centers: BTreeSet<usize>,
        exposed: usize,
    },
    /// A path with an odd number of edges.
    OddPath,
    Other,
}

impl StructureClass {
    pub fn is_tree_of_stars(&self) -> bool {
        matches!(self, StructureClass::TreeOfStars { .. })
    }
}

/// Center set if the tree is a tree of stars, else `None`.
pub(crate) fn tos_centers(tree: &Tree) -> Option<BTreeSet<usize>> {
    let (a, b) = crate::tree::bipartition(tree);
    let leaves: BTreeSet<usize> = tree.leaves().into_iter().collect();
    for (side, other) in [(&a, &b), (&b, &a)] {
        let contains_all_leaves = leaves.iter().all(|v| side.binary_search(v).is_ok());
        let low_degree = side.iter().all(|&v| tree.degree(v) <= 2);
        if contains_all_leaves && low_degree {
            return Some(other.iter().copied().collect());
        }
    }
    None
}

/// Classifies the tree as a tree of stars, almost one, an odd path, or other.
pub fn classify(tree: &Tree) -> StructureClass {
    if let Some(centers) = tos_centers(tree) {
        return StructureClass::TreeOfStars { centers };
    }
    if tree.is_path() {
        return StructureClass::OddPath;
    }
    let n = tree.order();
    let mut found: Option<(BTreeSet<usize>, usize)> = None;
    for leaf in tree.leaves() {
        let mut edges = tree.edges();
        edges.push((leaf, n));
        let extended = Tree::from_edges(n + 1, &edges).expect("pendant attachment");
        if let Some(centers) = tos_centers(&extended) {
            debug_assert!(centers.iter().all(|&c| c < n));
            if found.is_some() {
                // The defining leaf is unique for non-paths; two hits mean the
                // classifier itself is broken.
                panic!("ambiguous exposed center in almost-tree-of-stars test");
            }
            found = Some((centers, leaf));
        }
    }
    match found {
        Some((centers, exposed)) => StructureClass::AlmostTreeOfStars { centers, exposed },
        None => StructureClass::Other,
    }
}

/// `V(T) - C(T)`, the unique maximum stable set of a tree of stars.
pub fn unique_max_stable_set(tree: &Tree) -> Result<BTreeSet<usize>, StructureError> {
    match classify(tree) {
        StructureClass::TreeOfStars { centers } => {
            let set: BTreeSet<usize> = (0..tree.order()).filter(|v| !centers.contains(v)).collect();
            debug_assert_eq!(set.len(), stability_number(tree));
            Ok(set)
        }
        _ => Err(StructureError::NotTreeOfStars),
    }
}

/// Whether all center degrees differ pairwise by at most 1. A tree of stars
/// with fewer than two centers is trivially balanced.
pub fn is_balanced(tree: &Tree) -> Result<bool, StructureError> {
    match classify(tree) {
        StructureClass::TreeOfStars { centers } => {
            let degrees: Vec<usize> = centers.iter().map(|&c| tree.degree(c)).collect();
            match (degrees.iter().max(), degrees.iter().min()) {
                (Some(max), Some(min)) => Ok(max - min <= 1),
                _ => Ok(true),
            }
        }
        _ => Err(StructureError::NotTreeOfStars),
    }
}

/// Heavy/light accounting for balanced trees of stars of order `n` and
/// stability number `alpha`: `n - alpha` centers of degree `heavy_size` or
/// `heavy_size - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeavyLight {
    pub heavy_count: usize,
    pub light_count: usize,
    pub heavy_size: usize,
    pub light_size: usize,
}

/// `heavy_count = (n-1) mod (n-alpha)` with the divisible case mapping to
/// `n - alpha`; `light_count` is the rest.
pub fn heavy_light(n: usize, alpha: usize) -> Result<HeavyLight, StructureError> {
    if n < 2 || alpha > n - 1 || 2 * alpha < n {
        return Err(StructureError::BadRange { n, alpha });
    }
    let k = n - alpha;
    let rem = (n - 1) % k;
    let heavy_count = if rem == 0 { k } else { rem };
    let heavy_size = (n - 1).div_ceil(k);
    let hl = HeavyLight {
        heavy_count,
        light_count: k - heavy_count,
        heavy_size,
        light_size: heavy_size - 1,
    };
    debug_assert_eq!(
        hl.heavy_count * hl.heavy_size + hl.light_count * hl.light_size,
        n - 1
    );
    Ok(hl)
}

/// The labeled tree on the centers of a tree of stars: centers are adjacent
/// when at distance 2 in the original tree, and each center is labeled with
/// its star size (its degree in the original tree).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterTree {
    shape: Tree,
    labels: Vec<usize>,
}

impl CenterTree {
    /// Builds a center-tree from its shape and per-node star sizes. Structural
    /// validation only; label feasibility is checked by [`CenterTree::realize`].
    pub fn new(k: usize, edges: &[(usize, usize)], labels: Vec<usize>) -> Result<Self, StructureError> {
        let shape = Tree::from_edges(k, edges)?;
        assert_eq!(labels.len(), k, "one label per center");
        Ok(CenterTree { shape, labels })
    }

    pub fn size(&self) -> usize {
        self.shape.order()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.shape.edges()
    }

    pub fn shape(&self) -> &Tree {
        &self.shape
    }

    /// Order of the tree of stars this center-tree realizes to.
    pub fn realized_order(&self) -> usize {
        self.labels.iter().sum::<usize>() + 1
    }

    pub fn is_path(&self) -> bool {
        self.shape.is_path()
    }

    /// Label-aware canonical code; equal codes exactly for isomorphic labeled
    /// center-trees.
    pub fn canonical_code(&self) -> String {
        canonical_code_labeled(&self.shape, &self.labels)
    }

    /// Whether max label - min label <= 1.
    pub fn is_balanced(&self) -> bool {
        let max = self.labels.iter().max().expect("non-empty");
        let min = self.labels.iter().min().expect("non-empty");
        max - min <= 1
    }

    /// Builds the tree of stars described by this center-tree: one shared
    /// degree-2 vertex per center-tree edge, and `label - degree` private
    /// leaves per center. Vertex ids: centers first, then shared vertices in
    /// edge order, then private leaves.
    pub fn realize(&self) -> Result<Tree, StructureError> {
        let k = self.size();
        for c in 0..k {
            let degree = self.shape.degree(c);
            if self.labels[c] < degree.max(2) {
                return Err(StructureError::InfeasibleLabels {
                    center: c,
                    label: self.labels[c],
                    degree,
                });
            }
        }
        let mut edges = Vec::new();
        let mut next = k;
        for (u, v) in self.shape.edges() {
            edges.push((u, next));
            edges.push((v, next));
            next += 1;
        }
        for c in 0..k {
            for _ in 0..self.labels[c] - self.shape.degree(c) {
                edges.push((c, next));
                next += 1;
            }
        }
        let tree = Tree::from_edges(next, &edges)?;
        debug_assert_eq!(tree.order(), self.realized_order());
        Ok(tree)
    }
}

/// Extracts the center-tree of a tree of stars with at least 3 vertices.
pub fn center_tree(tree: &Tree) -> Result<CenterTree, StructureError> {
    let n = tree.order();
    if n < 3 {
        return Err(StructureError::Degenerate(n));
    }
    let centers = match classify(tree) {
        StructureClass::TreeOfStars { centers } => centers,
        _ => return Err(StructureError::NotTreeOfStars),
    };
    let index: std::collections::BTreeMap<usize, usize> = centers
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();
    let mut edges = Vec::new();
    for v in 0..n {
        if centers.contains(&v) || tree.degree(v) != 2 {
            continue;
        }
        // A degree-2 non-center joins exactly two centers.
        let nbrs = tree.neighbors(v);
        edges.push((index[&nbrs[0]], index[&nbrs[1]]));
    }
    let labels: Vec<usize> = centers.iter().map(|&c| tree.degree(c)).collect();
    CenterTree::new(centers.len(), &edges, labels)
}

/// All isomorphism classes of center-trees on `n - alpha` nodes with exactly
/// `heavy_count` labels `heavy_size` and `light_count` labels `light_size`,
/// every label at least its node degree. Each element realizes to a balanced
/// tree of stars of order `n` with stability number `alpha`. Infeasible
/// `(n, alpha)` pairs yield an empty list.
pub fn enumerate_balanced_center_trees(n: usize, alpha: usize) -> Vec<CenterTree> {
    let Ok(hl) = heavy_light(n, alpha) else {
        return Vec::new();
    };
    let k = n - alpha;
    if hl.heavy_size < 2 || (hl.light_count > 0 && hl.light_size < 2) {
        return Vec::new();
    }
    let Ok(shapes) = enumerate_free_trees(k) else {
        return Vec::new();
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for shape in shapes {
        for heavy_set in (0..k).combinations(hl.heavy_count) {
            let heavy_set: BTreeSet<usize> = heavy_set.into_iter().collect();
            let labels: Vec<usize> = (0..k)
                .map(|c| {
                    if heavy_set.contains(&c) {
                        hl.heavy_size
                    } else {
                        hl.light_size
                    }
                })
                .collect();
            let feasible = (0..k).all(|c| labels[c] >= shape.degree(c).max(2));
            if !feasible {
                continue;
            }
            let ct = CenterTree {
                shape: shape.clone(),
                labels,
            };
            if seen.insert(ct.canonical_code()) {
                out.push(ct);
            }
        }
    }
    out.sort_by_key(|ct| ct.canonical_code());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::merrifield_simmons;

    fn chair() -> Tree {
        Tree::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap()
    }

    fn spider_222() -> Tree {
        Tree::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap()
    }

    #[test]
    fn classify_paths() {
        // Even paths are trees of stars, odd paths are not.
        match classify(&Tree::path(5)) {
            StructureClass::TreeOfStars { centers } => {
                assert_eq!(centers, BTreeSet::from([1, 3]));
            }
            other => panic!("P_5 classified as {other:?}"),
        }
        assert_eq!(classify(&Tree::path(2)), StructureClass::OddPath);
        assert_eq!(classify(&Tree::path(4)), StructureClass::OddPath);
        match classify(&Tree::path(1)) {
            StructureClass::TreeOfStars { centers } => assert!(centers.is_empty()),
            other => panic!("P_1 classified as {other:?}"),
        }
    }

    #[test]
    fn classify_chair_is_almost() {
        match classify(&chair()) {
            StructureClass::AlmostTreeOfStars { centers, exposed } => {
                assert_eq!(centers, BTreeSet::from([0, 4]));
                assert_eq!(exposed, 4);
            }
            other => panic!("chair classified as {other:?}"),
        }
    }

    #[test]
    fn classify_spider_is_other() {
        assert_eq!(classify(&spider_222()), StructureClass::Other);
    }

    #[test]
    fn unique_max_stable_set_examples() {
        assert_eq!(
            unique_max_stable_set(&Tree::path(7)).unwrap(),
            BTreeSet::from([0, 2, 4, 6])
        );
        assert_eq!(
            unique_max_stable_set(&Tree::path(1)).unwrap(),
            BTreeSet::from([0])
        );
        assert!(unique_max_stable_set(&chair()).is_err());
    }

    #[test]
    fn balance_examples() {
        assert!(is_balanced(&Tree::path(7)).unwrap());
        let lopsided = CenterTree::new(2, &[(0, 1)], vec![4, 2])
            .unwrap()
            .realize()
            .unwrap();
        assert!(!is_balanced(&lopsided).unwrap());
        assert!(is_balanced(&Tree::path(4)).is_err());
    }

    #[test]
    fn heavy_light_examples() {
        assert_eq!(
            heavy_light(18, 13).unwrap(),
            HeavyLight {
                heavy_count: 2,
                light_count: 3,
                heavy_size: 4,
                light_size: 3
            }
        );
        assert_eq!(
            heavy_light(13, 10).unwrap(),
            HeavyLight {
                heavy_count: 3,
                light_count: 0,
                heavy_size: 4,
                light_size: 3
            }
        );
        assert_eq!(
            heavy_light(24, 21).unwrap(),
            HeavyLight {
                heavy_count: 2,
                light_count: 1,
                heavy_size: 8,
                light_size: 7
            }
        );
        assert!(heavy_light(6, 2).is_err());
        assert!(heavy_light(6, 6).is_err());
    }

    #[test]
    fn center_tree_of_odd_order_path() {
        let ct = center_tree(&Tree::path(7)).unwrap();
        assert_eq!(ct.size(), 3);
        assert!(ct.is_path());
        assert_eq!(ct.labels(), &[2, 2, 2]);
    }

    #[test]
    fn realize_examples() {
        let p7 = CenterTree::new(3, &[(0, 1), (1, 2)], vec![2, 2, 2])
            .unwrap()
            .realize()
            .unwrap();
        assert_eq!(
            crate::canon::canonical_code(&p7),
            crate::canon::canonical_code(&Tree::path(7))
        );

        let two_star = CenterTree::new(2, &[(0, 1)], vec![3, 3])
            .unwrap()
            .realize()
            .unwrap();
        assert_eq!(two_star.order(), 7);
        assert_eq!(merrifield_simmons(&two_star), crate::tree::Count::from(41u32));

        let bad = CenterTree::new(4, &[(0, 1), (0, 2), (0, 3)], vec![2, 2, 2, 2]).unwrap();
        assert!(matches!(
            bad.realize(),
            Err(StructureError::InfeasibleLabels { center: 0, .. })
        ));
    }

    #[test]
    fn center_tree_realize_round_trip() {
        let ct = CenterTree::new(3, &[(0, 1), (0, 2)], vec![4, 2, 3]).unwrap();
        let tree = ct.realize().unwrap();
        let back = center_tree(&tree).unwrap();
        assert_eq!(back.canonical_code(), ct.canonical_code());
    }

    #[test]
    fn balanced_center_tree_enumeration_examples() {
        let one = enumerate_balanced_center_trees(7, 5);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].labels(), &[3, 3]);

        let two = enumerate_balanced_center_trees(9, 6);
        assert_eq!(two.len(), 2);
        for ct in &two {
            assert!(ct.is_path());
            let mut sorted = ct.labels().to_vec();
            sorted.sort_unstable();
            assert_eq!(sorted, vec![2, 3, 3]);
        }

        assert!(enumerate_balanced_center_trees(6, 3).is_empty());
    }

    #[test]
    fn realized_balanced_center_trees_have_declared_invariants() {
        for (n, alpha) in [(9, 6), (10, 7), (12, 8), (13, 10)] {
            for ct in enumerate_balanced_center_trees(n, alpha) {
                let tree = ct.realize().unwrap();
                assert_eq!(tree.order(), n);
                assert_eq!(stability_number(&tree), alpha);
                assert!(is_balanced(&tree).unwrap());
            }
        }
    }
}
