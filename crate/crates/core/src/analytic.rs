//! Exact-arithmetic analytics: the polynomials `f_k`, their roots `R_k`, and
//! golden-ratio comparisons.
//!
//! `f_k(x) = x^k - x^(k-1) + 2x - 1` is strictly increasing on `[0, 1]` and
//! has a unique root `R_k` in `(1/2, 1)`; `R_2` is the inverse golden ratio.
//! Nothing here touches floating point: ratios of counts are compared against
//! the irrational thresholds by clearing denominators, and `R_k` is located
//! by bisection over exact rationals.

use crate::stars::{classify, StructureClass};
use crate::tree::{merrifield_simmons, Count, Tree};
use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyticError {
    #[error("k must be at least 2, got {0}")]
    BadK(usize),
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

fn rational_pow(x: &BigRational, k: usize) -> BigRational {
    let k = u32::try_from(k).expect("exponent fits u32");
    BigRational::new(x.numer().pow(k), x.denom().pow(k))
}

/// Exact value of `f_k(t) = t^k - t^(k-1) + 2t - 1`.
pub fn f_k_eval(k: usize, t: &BigRational) -> Result<BigRational, AnalyticError> {
    if k < 2 {
        return Err(AnalyticError::BadK(k));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    Ok(rational_pow(t, k) - rational_pow(t, k - 1) + two * t - BigRational::one())
}

/// A rational bracket `(lo, hi)` around the root `R_k`, with
/// `f_k(lo) < 0 < f_k(hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBracket {
    pub k: usize,
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootBracket {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Whether the bracket contains `(sqrt(5) - 1) / 2 = 1/phi`, decided by
    /// exact squaring: `q < 1/phi` iff `(2q + 1)^2 < 5`.
    pub fn contains_inverse_phi(&self) -> bool {
        let below = |q: &BigRational| {
            let s = q * BigRational::from_integer(BigInt::from(2)) + BigRational::one();
            &s * &s < BigRational::from_integer(BigInt::from(5))
        };
        below(&self.lo) && !below(&self.hi)
    }

    /// Exact form of `hi < 2^(-k/(k+1))`: `hi^(k+1) * 2^k < 1`. Since
    /// `R_k < hi`, a true result certifies `R_k < 2^(-k/(k+1))`.
    pub fn satisfies_power_bound(&self) -> bool {
        let pow = rational_pow(&self.hi, self.k + 1);
        let scaled = pow * BigRational::from_integer(BigInt::from(2).pow(self.k as u32));
        scaled < BigRational::one()
    }
}

/// Brackets `R_k` to width at most `tol` by exact-rational bisection starting
/// from `[1/2, 1]`. Bisection is sound because `f_k` is strictly increasing
/// on the interval.
pub fn r_k_bracket(k: usize, tol: &BigRational) -> Result<RootBracket, AnalyticError> {
    if k < 2 {
        return Err(AnalyticError::BadK(k));
    }
    assert!(tol > &BigRational::zero(), "tolerance must be positive");
    let mut lo = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut hi = BigRational::one();
    debug_assert!(f_k_eval(k, &lo)?.is_negative());
    debug_assert!(f_k_eval(k, &hi)?.is_positive());
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        let value = f_k_eval(k, &mid)?;
        // f_k has no rational roots (it is monic with constant term -1 and
        // f_k(1) = 1, f_k(-1) != 0), so the midpoint never lands on R_k.
        debug_assert!(!value.is_zero());
        if value.is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RootBracket { k, lo, hi })
}

/// `b/a > phi`, exactly: `b^2 > ab + a^2`. Requires `a >= 1`.
pub fn ratio_above_phi(b: &Count, a: &Count) -> bool {
    b * b > a * b + a * a
}

/// `b/a < phi`, exactly: `b^2 < ab + a^2`.
pub fn ratio_below_phi(b: &Count, a: &Count) -> bool {
    b * b < a * b + a * a
}

/// `a/b < R_k`, exactly. Clearing denominators in `f_k(a/b) < 0` gives
/// `a^k - a^(k-1) b + 2 a b^(k-1) - b^k < 0`, rearranged here so both sides
/// stay non-negative.
pub fn ratio_below_r_k(a: &Count, b: &Count, k: usize) -> bool {
    assert!(k >= 2);
    let k = k as u32;
    let lhs = a.pow(k) + BigUint::from(2u32) * a * b.pow(k - 1);
    let rhs = a.pow(k - 1) * b + b.pow(k);
    lhs < rhs
}

/// Outcome of checking the generalized leaf bound `F(T - v) < R_k * F(T)`
/// over every leaf `v` of a tree of stars whose centers all have degree at
/// least `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafBoundReport {
    pub k: usize,
    pub leaves_checked: usize,
    pub violations: Vec<usize>,
}

impl LeafBoundReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the leaf bound for each leaf, in exact integer arithmetic.
pub fn check_generalized_leaf_bound(tree: &Tree, k: usize) -> Result<LeafBoundReport, AnalyticError> {
    if k < 2 {
        return Err(AnalyticError::BadK(k));
    }
    let centers = match classify(tree) {
        StructureClass::TreeOfStars { centers } => centers,
        _ => {
            return Err(AnalyticError::NotApplicable(
                "tree is not a tree of stars".into(),
            ))
        }
    };
    if let Some(&min_degree) = centers.iter().map(|&c| tree.degree(c)).collect::<Vec<_>>().iter().min() {
        if min_degree < k {
            return Err(AnalyticError::NotApplicable(format!(
                "minimum center degree {min_degree} is below k = {k}"
            )));
        }
    }
    let total = merrifield_simmons(tree);
    let mut violations = Vec::new();
    let leaves = tree.leaves();
    for &leaf in &leaves {
        let without = merrifield_simmons(&tree.as_forest().delete(&[leaf]));
        if !ratio_below_r_k(&without, &total, k) {
            violations.push(leaf);
        }
    }
    Ok(LeafBoundReport {
        k,
        leaves_checked: leaves.len(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stars::CenterTree;

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn f_k_values() {
        for k in 2..=64 {
            assert_eq!(
                f_k_eval(k, &BigRational::one()).unwrap(),
                BigRational::one()
            );
        }
        assert_eq!(f_k_eval(3, &rational(1, 2)).unwrap(), rational(-1, 8));
        // f_2(t) = t^2 + t - 1
        assert_eq!(f_k_eval(2, &rational(3, 4)).unwrap(), rational(5, 16));
        assert!(f_k_eval(1, &BigRational::one()).is_err());
    }

    #[test]
    fn f_k_is_monotone_on_samples() {
        for k in 2..=16 {
            let samples: Vec<BigRational> = (0..=20).map(|i| rational(i, 20)).collect();
            for pair in samples.windows(2) {
                assert!(
                    f_k_eval(k, &pair[0]).unwrap() < f_k_eval(k, &pair[1]).unwrap(),
                    "k={k}"
                );
            }
        }
    }

    #[test]
    fn bracket_for_k2_holds_inverse_phi() {
        let tol = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12));
        let bracket = r_k_bracket(2, &tol).unwrap();
        assert!(bracket.width() <= tol);
        assert!(bracket.contains_inverse_phi());
        // f_2 vanishes inside the bracket: signs differ at the ends.
        assert!(f_k_eval(2, &bracket.lo).unwrap().is_negative());
        assert!(f_k_eval(2, &bracket.hi).unwrap().is_positive());
    }

    #[test]
    fn bracket_for_k3_sits_between_055_and_057() {
        let tol = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(9));
        let bracket = r_k_bracket(3, &tol).unwrap();
        assert!(bracket.lo > rational(55, 100));
        assert!(bracket.hi < rational(57, 100));
    }

    #[test]
    fn power_bound_holds_for_small_k() {
        let tol = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12));
        for k in 2..=8 {
            assert!(r_k_bracket(k, &tol).unwrap().satisfies_power_bound());
        }
    }

    #[test]
    fn phi_ratio_tests_match_known_counts() {
        // F(P_7)/F(P_6) = 34/21 > phi; the reverse comparison fails.
        let b = Count::from(34u32);
        let a = Count::from(21u32);
        assert!(ratio_above_phi(&b, &a));
        assert!(!ratio_below_phi(&b, &a));
        // F(P_6)/F(P_5) relative to deleting a center instead: 21/13 < phi.
        assert!(ratio_below_phi(&Count::from(21u32), &Count::from(13u32)));
    }

    #[test]
    fn leaf_bound_examples() {
        let report = check_generalized_leaf_bound(&Tree::path(7), 2).unwrap();
        assert!(report.pass());

        let all_heavy = CenterTree::new(3, &[(0, 1), (1, 2)], vec![3, 3, 3])
            .unwrap()
            .realize()
            .unwrap();
        assert!(check_generalized_leaf_bound(&all_heavy, 3).unwrap().pass());

        let star_of_stars = CenterTree::new(4, &[(0, 1), (0, 2), (0, 3)], vec![4, 4, 4, 4])
            .unwrap()
            .realize()
            .unwrap();
        assert!(check_generalized_leaf_bound(&star_of_stars, 4)
            .unwrap()
            .pass());

        assert!(check_generalized_leaf_bound(&Tree::path(7), 3).is_err());
        assert!(check_generalized_leaf_bound(&Tree::path(4), 2).is_err());
    }
}
