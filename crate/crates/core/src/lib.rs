//! Exact algorithms around the number of stable (independent) sets of a
//! tree, also known as its Fibonacci number or Merrifield-Simmons index.
//!
//! The crate provides:
//!
//! * exact counting of stable sets on trees and forests ([`merrifield_simmons`]),
//!   with an independent brute-force oracle and arbitrary-precision counts;
//! * isomorph-free enumeration of free trees of a given order
//!   ([`enumerate_free_trees`]), cross-checkable against a Prüfer-sequence
//!   oracle;
//! * recognition of trees of stars, their centers, balance, and the labeled
//!   center-tree they compress to ([`classify`], [`center_tree`], [`realize`]);
//! * the edge-rotation calculus: the ten-factor decomposition of a rotation,
//!   the exact sign test for whether a rotation decreases the count, and
//!   constructive searches for good rotations ([`decompose`], [`is_good`],
//!   [`construct_good_rotation_nontos`], [`rebalance_rotation`]);
//! * extremal-tree search for a given order and stability number, both
//!   exhaustive and pruned to balanced trees of stars plus the odd path
//!   ([`extremal_exhaustive`], [`extremal_pruned`]), with verification
//!   harnesses for the structural facts the search relies on.
//!
//! All counts are arbitrary-precision and all irrational comparisons (golden
//! ratio, the roots `R_k`) are done in exact integer or rational arithmetic,
//! so every strict inequality reported by this crate is exact.

pub mod analytic;
pub mod canon;
pub mod enumerate;
pub mod extremal;
pub mod io;
pub mod rotation;
pub mod stars;
pub mod tree;
pub mod verify;

pub use analytic::{
    check_generalized_leaf_bound, f_k_eval, r_k_bracket, ratio_above_phi, ratio_below_phi,
    ratio_below_r_k, AnalyticError, LeafBoundReport, RootBracket,
};
pub use canon::{canonical_code, CanonicalCode};
pub use enumerate::{
    enumerate_free_trees, enumerate_labeled_trees, random_labeled_tree, trees_with_alpha,
    EnumError, TreeStream, FREE_TREE_ORDER_LIMIT, LABELED_TREE_ORDER_LIMIT,
};
pub use extremal::{
    atlas, extremal_cached, extremal_exhaustive, extremal_exhaustive_all, extremal_pruned,
    predicted_ctpath_tree, record_to_json, records_to_csv, verify_ctpath_theorem,
    verify_structure_theorem, AtlasEntry, CtPathReport, ExtremalError, ExtremalRecord, Method,
    StructureReport, Violation,
};
pub use rotation::{
    apply_rotation, construct_good_rotation_nontos, decompose, f_delta_identity,
    find_good_rotation, is_good, rebalance_rotation, Rotation, RotationDecomposition,
    RotationError,
};
pub use stars::{
    center_tree, classify, enumerate_balanced_center_trees, heavy_light, is_balanced,
    unique_max_stable_set, CenterTree, HeavyLight, StructureClass, StructureError,
};
pub use tree::{
    bipartition, count_stable_sets_bruteforce, fibonacci, merrifield_simmons, stability_number,
    Count, Forest, Tree, TreeError, BRUTE_FORCE_ORDER_LIMIT,
};
pub use verify::SuiteReport;
