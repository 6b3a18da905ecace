//! Canonical-code correctness against a brute-force isomorphism oracle.

use fibtree::{canonical_code, enumerate_free_trees, random_labeled_tree, verify, Tree};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// Permutation-scan isomorphism test, pruned by degree sequences.
fn brute_force_isomorphic(a: &Tree, b: &Tree) -> bool {
    if a.order() != b.order() {
        return false;
    }
    let n = a.order();
    let mut deg_a: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut deg_b: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return false;
    }
    let edges_b: BTreeSet<(usize, usize)> = b.edges().into_iter().collect();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let ok = a
            .edges()
            .iter()
            .all(|&(u, v)| edges_b.contains(&(perm[u].min(perm[v]), perm[u].max(perm[v]))));
        if ok {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

#[test]
fn code_equality_matches_brute_force_isomorphism_up_to_order_8() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 1..=8 {
        let reps: Vec<Tree> = enumerate_free_trees(n).unwrap().collect();
        for i in 0..reps.len() {
            for j in i..reps.len() {
                let scrambled = verify::shuffle_labels(&reps[j], &mut rng);
                let same_code = canonical_code(&reps[i]) == canonical_code(&scrambled);
                let brute = brute_force_isomorphic(&reps[i], &scrambled);
                assert_eq!(same_code, brute, "n={n} pair ({i}, {j})");
                assert_eq!(same_code, i == j, "representatives are distinct classes");
            }
        }
    }
}

#[test]
fn five_hundred_relabelings_share_one_code() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let tree = random_labeled_tree(16, &mut rng);
    let code = canonical_code(&tree);
    assert_eq!(code.as_str().len(), 32);
    for _ in 0..500 {
        let relabeled = verify::shuffle_labels(&tree, &mut rng);
        assert_eq!(canonical_code(&relabeled), code);
    }
}
