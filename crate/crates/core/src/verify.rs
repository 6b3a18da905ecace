//! Verification suites: exhaustive and randomized checks of the exact
//! identities and structural facts the rest of the crate relies on.
//!
//! Every suite returns a [`SuiteReport`]; a violation is a property failure,
//! not an internal error, so callers can print counterexamples and fail
//! gracefully. The expected outcome of every suite is zero violations.

use crate::analytic::{check_generalized_leaf_bound, r_k_bracket, ratio_above_phi, ratio_below_phi};
use crate::canon::canonical_code;
use crate::enumerate::{enumerate_free_trees, random_labeled_tree, EnumError};
use crate::rotation::{apply_rotation, f_delta_identity, decompose, Rotation};
use crate::stars::{center_tree, classify, StructureClass};
use crate::tree::{
    count_stable_sets_bruteforce, fibonacci, merrifield_simmons, stability_number, Count, Tree,
    BRUTE_FORCE_ORDER_LIMIT,
};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::fmt;

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub violations: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport {
            name,
            checks: 0,
            violations: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(detail());
        }
    }

    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {}: {} checks, {} violations",
            self.name,
            self.checks,
            self.violations.len()
        )?;
        for v in &self.violations {
            writeln!(f, "  VIOLATION {v}")?;
        }
        Ok(())
    }
}

/// Deletion recurrence, growth bounds, and the brute-force oracle.
///
/// For every tree up to `max_n` and every vertex `v`:
/// `F(T) = F(T - v) + F(T - N[v])`, `F(T - v) < F(T) <= 2 F(T - v)` with the
/// right side strict when `deg(v) >= 1`; counts additionally agree with the
/// subset-scan oracle up to the brute-force bound (capped at order 12 here),
/// and paths count Fibonacci numbers.
pub fn verify_lemma1(max_n: usize) -> Result<SuiteReport, EnumError> {
    let mut report = SuiteReport::new("lemma1");
    let brute_cap = BRUTE_FORCE_ORDER_LIMIT.min(12);
    for n in 1..=max_n {
        for tree in enumerate_free_trees(n)? {
            let total = merrifield_simmons(&tree);
            let code = || canonical_code(&tree).to_string();
            for v in 0..n {
                let without = merrifield_simmons(&tree.as_forest().delete(&[v]));
                let without_closed = merrifield_simmons(&tree.delete_closed_neighborhood(v));
                report.check(total == &without + &without_closed, || {
                    format!("recurrence fails at v={v} in {}", code())
                });
                report.check(without < total, || {
                    format!("F(T - v) < F(T) fails at v={v} in {}", code())
                });
                let doubled = Count::from(2u32) * &without;
                let ok = if tree.degree(v) >= 1 {
                    total < doubled
                } else {
                    total <= doubled
                };
                report.check(ok, || {
                    format!("two-factor bound fails at v={v} in {}", code())
                });
            }
            if n <= brute_cap {
                let brute = count_stable_sets_bruteforce(&tree).expect("within scan bound");
                report.check(brute == total, || {
                    format!("oracle disagreement on {}", code())
                });
            }
        }
    }
    for n in 1..=30 {
        report.check(
            merrifield_simmons(&Tree::path(n)) == fibonacci(n + 2),
            || format!("F(P_{n}) is not Fibonacci({})", n + 2),
        );
    }
    Ok(report)
}

fn all_rotations(tree: &Tree) -> Vec<Rotation> {
    let n = tree.order();
    let mut out = Vec::new();
    for y in 0..n {
        for &x in tree.neighbors(y) {
            for x_new in 0..n {
                let rot = Rotation { y, x, x_new };
                if rot.validate(tree).is_ok() {
                    out.push(rot);
                }
            }
        }
    }
    out
}

/// Exact rotation identity and sign test over *all* rotations of *all* trees
/// up to `max_n`: the factored delta equals the direct count difference, and
/// the sign test agrees with directly comparing the two counts.
pub fn verify_lemma7_exhaustive(max_n: usize) -> Result<SuiteReport, EnumError> {
    let mut report = SuiteReport::new("lemma7-exhaustive");
    for n in 1..=max_n {
        for tree in enumerate_free_trees(n)? {
            let total = merrifield_simmons(&tree);
            for rot in all_rotations(&tree) {
                let (direct, factored) = f_delta_identity(&tree, rot).expect("valid rotation");
                report.check(direct == factored, || {
                    format!(
                        "identity fails for {:?} on {}",
                        rot,
                        canonical_code(&tree)
                    )
                });
                let rotated = apply_rotation(&tree, rot).expect("valid rotation");
                let decreased = merrifield_simmons(&rotated) < total;
                let sign = decompose(&tree, rot)
                    .expect("valid rotation")
                    .strictly_decreases_count();
                report.check(sign == decreased, || {
                    format!(
                        "sign test disagrees for {:?} on {}",
                        rot,
                        canonical_code(&tree)
                    )
                });
            }
        }
    }
    Ok(report)
}

/// The rotation identity on random (tree, rotation) pairs of order up to
/// `max_n`, seeded for reproducibility.
pub fn verify_lemma7_random(max_n: usize, pairs: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("lemma7-random");
    let mut rng = StdRng::seed_from_u64(seed);
    let max_n = max_n.max(3);
    let mut produced = 0;
    while produced < pairs {
        let n = rng.gen_range(3..=max_n);
        let tree = random_labeled_tree(n, &mut rng);
        let rotations = all_rotations(&tree);
        if rotations.is_empty() {
            continue;
        }
        let rot = rotations[rng.gen_range(0..rotations.len())];
        produced += 1;
        let (direct, factored) = f_delta_identity(&tree, rot).expect("valid rotation");
        report.check(direct == factored, || {
            format!("identity fails for {:?} on {:?}", rot, tree.edges())
        });
    }
    report
}

/// Golden-ratio bounds and the generalized leaf bound, in exact arithmetic:
/// for trees of stars, `F(T) > phi F(T - v)` at every leaf and
/// `F(T) < phi F(T - w)` at every center; for almost-trees-of-stars the leaf
/// bound holds at every non-exposed leaf and the center bound at every
/// center including the exposed one. Balanced trees of stars additionally
/// satisfy the `R_k` leaf bound at `k` = their minimum center degree.
pub fn verify_ratios(max_n: usize) -> Result<SuiteReport, EnumError> {
    let mut report = SuiteReport::new("ratios");
    for n in 1..=max_n {
        for tree in enumerate_free_trees(n)? {
            let total = merrifield_simmons(&tree);
            let code = || canonical_code(&tree).to_string();
            let deleted = |v: usize| merrifield_simmons(&tree.as_forest().delete(&[v]));
            match classify(&tree) {
                StructureClass::TreeOfStars { centers } => {
                    for v in tree.leaves() {
                        report.check(ratio_above_phi(&total, &deleted(v)), || {
                            format!("leaf phi bound fails at {v} in {}", code())
                        });
                    }
                    for &w in &centers {
                        report.check(ratio_below_phi(&total, &deleted(w)), || {
                            format!("center phi bound fails at {w} in {}", code())
                        });
                    }
                    let min_center_degree = centers.iter().map(|&c| tree.degree(c)).min();
                    if let Some(k) = min_center_degree {
                        let balanced =
                            centers.iter().map(|&c| tree.degree(c)).max().unwrap() - k <= 1;
                        if balanced && k >= 2 {
                            let leaf_bound =
                                check_generalized_leaf_bound(&tree, k).expect("ToS with degree k");
                            report.check(leaf_bound.pass(), || {
                                format!(
                                    "R_k leaf bound fails at k={k} in {}: {:?}",
                                    code(),
                                    leaf_bound.violations
                                )
                            });
                        }
                    }
                }
                StructureClass::AlmostTreeOfStars { centers, exposed } => {
                    for v in tree.leaves() {
                        if v == exposed {
                            continue;
                        }
                        report.check(ratio_above_phi(&total, &deleted(v)), || {
                            format!("almost leaf phi bound fails at {v} in {}", code())
                        });
                    }
                    for &w in &centers {
                        report.check(ratio_below_phi(&total, &deleted(w)), || {
                            format!("almost center phi bound fails at {w} in {}", code())
                        });
                    }
                }
                _ => {}
            }
        }
    }
    Ok(report)
}

/// Brackets `R_k` for `2 <= k <= max_k` at width `1e-12` and checks the
/// bracket invariants: the k = 2 bracket contains the inverse golden ratio
/// and every upper end satisfies `hi^(k+1) 2^k < 1`.
pub fn verify_rk_brackets(max_k: usize) -> SuiteReport {
    let mut report = SuiteReport::new("r_k-brackets");
    let tol = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12));
    for k in 2..=max_k {
        let bracket = r_k_bracket(k, &tol).expect("k >= 2");
        report.check(bracket.width() <= tol, || format!("bracket too wide at k={k}"));
        report.check(bracket.satisfies_power_bound(), || {
            format!("power bound fails at k={k}")
        });
        if k == 2 {
            report.check(bracket.contains_inverse_phi(), || {
                "k=2 bracket misses 1/phi".to_string()
            });
        }
    }
    report
}

/// Center-tree round trips and canonical-code invariance: every tree of
/// stars survives `realize(center_tree(T))` up to isomorphism, random
/// relabelings never change a canonical code, and codes decode back to
/// themselves.
pub fn verify_roundtrip(max_n: usize, samples: usize, seed: u64) -> Result<SuiteReport, EnumError> {
    let mut report = SuiteReport::new("roundtrip");
    for n in 3..=max_n {
        for tree in enumerate_free_trees(n)? {
            if !classify(&tree).is_tree_of_stars() {
                continue;
            }
            let ct = center_tree(&tree).expect("tree of stars of order >= 3");
            let realized = ct.realize().expect("extracted center-trees are feasible");
            report.check(
                canonical_code(&realized) == canonical_code(&tree),
                || format!("center-tree round trip fails for {}", canonical_code(&tree)),
            );
        }
    }
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let n = rng.gen_range(3..=16);
        let tree = random_labeled_tree(n, &mut rng);
        let code = canonical_code(&tree);
        report.check(code.decode().map(|t| canonical_code(&t)) == Ok(code.clone()), || {
            format!("decode round trip fails for {code}")
        });
        for _ in 0..5 {
            let relabeled = shuffle_labels(&tree, &mut rng);
            report.check(canonical_code(&relabeled) == code, || {
                format!("relabeling changed the code of {code}")
            });
        }
        report.check(stability_number(&tree) == code.decode().map(|t| stability_number(&t)).unwrap(), || {
            format!("decode changed alpha for {code}")
        });
    }
    Ok(report)
}

/// Applies a uniformly random vertex relabeling.
pub fn shuffle_labels<R: Rng + ?Sized>(tree: &Tree, rng: &mut R) -> Tree {
    use rand::seq::SliceRandom;
    let n = tree.order();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges: Vec<(usize, usize)> = tree
        .edges()
        .into_iter()
        .map(|(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v])))
        .collect();
    Tree::from_edges(n, &edges).expect("relabeling preserves treeness")
}
