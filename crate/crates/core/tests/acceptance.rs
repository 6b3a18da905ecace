//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its parameters and elapsed time (visible with `--nocapture`).
//!
//! Run with `cargo test -p fibtree --test acceptance -- --nocapture`
//! (`--release` recommended for the larger scans).

use fibtree::{
    apply_rotation, canonical_code, center_tree, classify, construct_good_rotation_nontos,
    count_stable_sets_bruteforce, enumerate_free_trees, extremal_exhaustive_all, extremal_pruned,
    fibonacci, is_balanced, is_good, merrifield_simmons, r_k_bracket, random_labeled_tree,
    rebalance_rotation, stability_number, verify, verify_ctpath_theorem, verify_structure_theorem,
    CanonicalCode, Count, ExtremalRecord, StructureClass, Tree,
};
use num::rational::BigRational;
use num::BigInt;
use num::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

/// Exhaustive records for every order up to 18, computed once and shared by
/// the criteria that consume them.
fn records_to_18() -> &'static BTreeMap<usize, BTreeMap<usize, ExtremalRecord>> {
    static RECORDS: OnceLock<BTreeMap<usize, BTreeMap<usize, ExtremalRecord>>> = OnceLock::new();
    RECORDS.get_or_init(|| {
        (1..=18)
            .map(|n| (n, extremal_exhaustive_all(n).expect("within budget")))
            .collect()
    })
}

fn finish(criterion: &str, start: Instant, budget: Duration, detail: String) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "{criterion} exceeded its time budget: {elapsed:?} > {budget:?}"
    );
    println!("criterion {criterion}: PASS ({detail}; {elapsed:.2?})");
}

#[test]
fn criterion_1_counting_oracle() {
    let start = Instant::now();
    // Every free tree up to order 12, exact equality against the subset scan.
    let mut class_checks = 0usize;
    for n in 1..=12 {
        for tree in enumerate_free_trees(n).unwrap() {
            assert_eq!(
                merrifield_simmons(&tree),
                count_stable_sets_bruteforce(&tree).unwrap(),
                "oracle mismatch on {}",
                canonical_code(&tree)
            );
            class_checks += 1;
        }
    }
    // 500 random Prüfer-generated labeled trees with order up to 20.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0001);
    let trees: Vec<Tree> = (0..500)
        .map(|_| {
            let n = rng.gen_range(1..=20);
            random_labeled_tree(n, &mut rng)
        })
        .collect();
    trees.par_iter().for_each(|tree| {
        assert_eq!(
            merrifield_simmons(tree),
            count_stable_sets_bruteforce(tree).unwrap(),
            "oracle mismatch on random tree {:?}",
            tree.edges()
        );
    });
    finish(
        "1 (counting oracle)",
        start,
        Duration::from_secs(60),
        format!("{class_checks} classes + 500 random trees"),
    );
}

#[test]
fn criterion_2_fibonacci_endpoints() {
    let start = Instant::now();
    for n in 2..=14 {
        let mut min: Option<(Count, Vec<CanonicalCode>)> = None;
        let mut max: Option<(Count, Vec<CanonicalCode>)> = None;
        for tree in enumerate_free_trees(n).unwrap() {
            let f = merrifield_simmons(&tree);
            let code = canonical_code(&tree);
            match &mut min {
                Some((best, codes)) if f == *best => codes.push(code.clone()),
                Some((best, codes)) if f < *best => {
                    *best = f.clone();
                    *codes = vec![code.clone()];
                }
                None => min = Some((f.clone(), vec![code.clone()])),
                _ => {}
            }
            match &mut max {
                Some((best, codes)) if f == *best => codes.push(code),
                Some((best, codes)) if f > *best => {
                    *best = f;
                    *codes = vec![code];
                }
                None => max = Some((f, vec![code])),
                _ => {}
            }
        }
        let (min_f, min_codes) = min.unwrap();
        assert_eq!(min_f, fibonacci(n + 2), "min at n={n}");
        assert_eq!(min_codes, vec![canonical_code(&Tree::path(n))], "min attained only by P_{n}");
        let (max_f, max_codes) = max.unwrap();
        assert_eq!(max_f, (Count::one() << (n - 1)) + Count::one(), "max at n={n}");
        assert_eq!(
            max_codes,
            vec![canonical_code(&Tree::star(n))],
            "max attained only by the star at n={n}"
        );
    }
    finish(
        "2 (Fibonacci endpoints)",
        start,
        Duration::from_secs(120),
        "orders 2..=14, unique path minimum and star maximum".into(),
    );
}

#[test]
fn criterion_3_extremal_structure() {
    let start = Instant::now();
    let report = verify_structure_theorem(18).unwrap();
    assert!(report.pass(), "{report}");
    finish(
        "3 (balanced tree of stars or odd path)",
        start,
        Duration::from_secs(900),
        format!(
            "{} (n, alpha) classes, {} minimizers, 0 violations",
            report.classes_checked, report.minimizers_checked
        ),
    );
}

#[test]
fn criterion_4_ctpath_characterization() {
    let start = Instant::now();
    let report = verify_ctpath_theorem(18).unwrap();
    assert!(report.pass(), "{report}");
    assert!(report.pairs_checked > 0);
    finish(
        "4 (light-count <= 2 characterization)",
        start,
        Duration::from_secs(900),
        format!("{} qualifying (n, alpha) pairs, both directions", report.pairs_checked),
    );
}

#[test]
fn criterion_5_pruned_matches_exhaustive() {
    let start = Instant::now();
    let mut pairs = 0usize;
    for n in 1..=16 {
        for (alpha, exhaustive) in &records_to_18()[&n] {
            assert!(2 * alpha >= n, "feasible alpha is at least n/2");
            let pruned = extremal_pruned(n, *alpha).unwrap();
            assert_eq!(pruned.f_min, exhaustive.f_min, "f_min at n={n} alpha={alpha}");
            assert_eq!(
                pruned.minimizers, exhaustive.minimizers,
                "minimizer sets at n={n} alpha={alpha}"
            );
            pairs += 1;
        }
    }
    finish(
        "5 (pruned = exhaustive)",
        start,
        Duration::from_secs(900),
        format!("{pairs} (n, alpha) pairs agree exactly"),
    );
}

#[test]
fn criterion_6_rotation_identity() {
    let start = Instant::now();
    let random = verify::verify_lemma7_random(24, 10_000, 0x0006);
    assert!(random.pass(), "{random}");
    assert_eq!(random.checks, 10_000);
    let exhaustive = verify::verify_lemma7_exhaustive(10).unwrap();
    assert!(exhaustive.pass(), "{exhaustive}");
    finish(
        "6 (rotation count identity)",
        start,
        Duration::from_secs(300),
        format!(
            "10000 random pairs up to order 24; {} exhaustive checks up to order 10",
            exhaustive.checks
        ),
    );
}

#[test]
fn criterion_7_constructive_rotations() {
    let start = Instant::now();
    // Constructive witness rotation for every non-path tree that is not a
    // tree of stars, order <= 12.
    let mut constructed = 0usize;
    for n in 1..=12 {
        for tree in enumerate_free_trees(n).unwrap() {
            if tree.is_path() || classify(&tree).is_tree_of_stars() {
                continue;
            }
            let rot = construct_good_rotation_nontos(&tree).unwrap_or_else(|e| {
                panic!("no rotation for {}: {e}", canonical_code(&tree))
            });
            assert!(
                is_good(&tree, rot).unwrap(),
                "bad construction on {}",
                canonical_code(&tree)
            );
            constructed += 1;
        }
    }
    // Rebalancing rotation for every unbalanced tree of stars, order <= 14.
    let mut rebalanced = 0usize;
    for n in 1..=14 {
        for tree in enumerate_free_trees(n).unwrap() {
            let centers = match classify(&tree) {
                StructureClass::TreeOfStars { centers } => centers,
                _ => continue,
            };
            if is_balanced(&tree).unwrap() {
                continue;
            }
            let rot = rebalance_rotation(&tree).unwrap();
            assert!(
                is_good(&tree, rot).unwrap(),
                "bad rebalance on {}",
                canonical_code(&tree)
            );
            let rotated = apply_rotation(&tree, rot).unwrap();
            match classify(&rotated) {
                StructureClass::TreeOfStars { centers: after } => {
                    assert_eq!(centers, after, "center set changed on {}", canonical_code(&tree));
                }
                other => panic!("rebalance left {other:?} on {}", canonical_code(&tree)),
            }
            rebalanced += 1;
        }
    }
    assert!(constructed > 0 && rebalanced > 0);
    finish(
        "7 (constructive rotations)",
        start,
        Duration::from_secs(300),
        format!("{constructed} witness constructions, {rebalanced} rebalances, zero failures"),
    );
}

#[test]
fn criterion_8_golden_ratio_and_rk_bounds() {
    let start = Instant::now();
    let ratios = verify::verify_ratios(14).unwrap();
    assert!(ratios.pass(), "{ratios}");
    let tol = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12));
    let mut brackets = 0usize;
    for k in 2..=64 {
        let bracket = r_k_bracket(k, &tol).unwrap();
        assert!(bracket.width() <= tol, "width at k={k}");
        assert!(bracket.satisfies_power_bound(), "power bound at k={k}");
        if k == 2 {
            assert!(bracket.contains_inverse_phi(), "R_2 bracket misses 1/phi");
        }
        brackets += 1;
    }
    finish(
        "8 (golden ratio and R_k bounds)",
        start,
        Duration::from_secs(300),
        format!("{} exact ratio checks; {brackets} brackets at 1e-12", ratios.checks),
    );
}

#[test]
fn criterion_9_atlas_24() {
    let start = Instant::now();
    let entries = fibtree::atlas(24).unwrap();
    let alphas: Vec<usize> = entries.iter().map(|e| e.alpha).collect();
    assert_eq!(alphas, (13..=23).collect::<Vec<_>>());
    let mut center_trees = 0usize;
    for entry in &entries {
        assert!(!entry.record.minimizers.is_empty());
        assert_eq!(entry.center_trees.len(), entry.record.minimizers.len());
        center_trees += entry.center_trees.len();
        let problems = entry.verify(24);
        assert!(problems.is_empty(), "alpha={}: {problems:?}", entry.alpha);
        // Every minimizer decodes to a balanced tree of stars of order 24
        // with its declared stability number.
        for code in &entry.record.minimizers {
            let tree = code.decode().unwrap();
            assert_eq!(tree.order(), 24);
            assert_eq!(stability_number(&tree), entry.alpha);
            assert!(classify(&tree).is_tree_of_stars());
            assert!(is_balanced(&tree).unwrap());
            assert_eq!(
                center_tree(&tree).unwrap().canonical_code(),
                entry.center_trees[entry
                    .record
                    .minimizers
                    .iter()
                    .position(|c| c == code)
                    .unwrap()]
                .canonical_code()
            );
        }
    }
    finish(
        "9 (order-24 atlas)",
        start,
        Duration::from_secs(300),
        format!("alpha 13..=23, {center_trees} extremal center-trees, all checks pass"),
    );
}
