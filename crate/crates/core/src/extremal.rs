//! Extremal-tree search and verification harnesses.
//!
//! A tree is extremal if it has the minimum stable-set count among all trees
//! of its order and stability number. [`extremal_exhaustive`] scans every
//! isomorphism class; [`extremal_pruned`] scans only balanced trees of stars
//! (via their center-trees) plus the path, which is the complete candidate
//! set for minimizers. Records always carry *all* minimizers: uniqueness is
//! only guaranteed in the narrow regime [`verify_ctpath_theorem`] checks.

use crate::canon::{canonical_code, CanonicalCode};
use crate::enumerate::{enumerate_free_trees, trees_with_alpha, EnumError};
use crate::stars::{
    classify, enumerate_balanced_center_trees, heavy_light, is_balanced, CenterTree, HeavyLight,
    StructureClass,
};
use crate::tree::{merrifield_simmons, stability_number, Count, Tree};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use thiserror::Error;

/// Order cap for exhaustive scans.
pub const EXHAUSTIVE_ORDER_LIMIT: usize = 20;
/// Cap on the center count `n - alpha` for pruned scans.
pub const PRUNED_CENTER_LIMIT: usize = 14;

#[derive(Debug, Error)]
pub enum ExtremalError {
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("no tree has order {n} and stability number {alpha}")]
    EmptyClass { n: usize, alpha: usize },
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error("cache: {0}")]
    Cache(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exhaustive,
    Pruned,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Exhaustive => f.write_str("exhaustive"),
            Method::Pruned => f.write_str("pruned"),
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exhaustive" => Ok(Method::Exhaustive),
            "pruned" => Ok(Method::Pruned),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

/// Minimum stable-set count for `(n, alpha)` together with every minimizer,
/// as sorted canonical codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalRecord {
    pub n: usize,
    pub alpha: usize,
    pub f_min: Count,
    pub minimizers: Vec<CanonicalCode>,
    pub method: Method,
}

type Best = Option<(Count, BTreeSet<CanonicalCode>)>;

fn fold_tree(best: &mut Best, tree: &Tree) {
    let count = merrifield_simmons(tree);
    match best {
        Some((min, codes)) => {
            if count < *min {
                *min = count;
                codes.clear();
                codes.insert(canonical_code(tree));
            } else if count == *min {
                codes.insert(canonical_code(tree));
            }
        }
        None => {
            *best = Some((count, BTreeSet::from([canonical_code(tree)])));
        }
    }
}

fn merge_best(a: Best, b: Best) -> Best {
    match (a, b) {
        (None, b) => b,
        (a, None) => a,
        (Some((fa, ca)), Some((fb, cb))) => {
            if fa < fb {
                Some((fa, ca))
            } else if fb < fa {
                Some((fb, cb))
            } else {
                Some((fa, ca.into_iter().chain(cb).collect()))
            }
        }
    }
}

fn record_from_best(n: usize, alpha: usize, method: Method, best: Best) -> Result<ExtremalRecord, ExtremalError> {
    let (f_min, codes) = best.ok_or(ExtremalError::EmptyClass { n, alpha })?;
    Ok(ExtremalRecord {
        n,
        alpha,
        f_min,
        minimizers: codes.into_iter().collect(),
        method,
    })
}

/// Scans every tree with the given order and stability number and records
/// the minimum count with all its minimizers.
pub fn extremal_exhaustive(n: usize, alpha: usize) -> Result<ExtremalRecord, ExtremalError> {
    if n > EXHAUSTIVE_ORDER_LIMIT {
        return Err(ExtremalError::BudgetExceeded(format!(
            "order {n} exceeds the exhaustive limit {EXHAUSTIVE_ORDER_LIMIT}"
        )));
    }
    let parts = trees_with_alpha(n, alpha)?.partition(rayon::current_num_threads().max(1));
    let best = parts
        .into_par_iter()
        .map(|sub| {
            let mut best = None;
            for tree in sub {
                fold_tree(&mut best, &tree);
            }
            best
        })
        .reduce(|| None, merge_best);
    record_from_best(n, alpha, Method::Exhaustive, best)
}

/// One exhaustive pass over all trees of order `n`, bucketed by stability
/// number. Equivalent to running [`extremal_exhaustive`] per feasible alpha.
pub fn extremal_exhaustive_all(n: usize) -> Result<BTreeMap<usize, ExtremalRecord>, ExtremalError> {
    if n > EXHAUSTIVE_ORDER_LIMIT {
        return Err(ExtremalError::BudgetExceeded(format!(
            "order {n} exceeds the exhaustive limit {EXHAUSTIVE_ORDER_LIMIT}"
        )));
    }
    let parts = enumerate_free_trees(n)?.partition(rayon::current_num_threads().max(1));
    let merged: BTreeMap<usize, Best> = parts
        .into_par_iter()
        .map(|sub| {
            let mut by_alpha: BTreeMap<usize, Best> = BTreeMap::new();
            for tree in sub {
                let alpha = stability_number(&tree);
                fold_tree(by_alpha.entry(alpha).or_default(), &tree);
            }
            by_alpha
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (alpha, best) in b {
                let slot = a.remove(&alpha);
                a.insert(alpha, merge_best(slot.flatten(), best));
            }
            a
        });
    let mut out = BTreeMap::new();
    for (alpha, best) in merged {
        out.insert(alpha, record_from_best(n, alpha, Method::Exhaustive, best)?);
    }
    Ok(out)
}

/// Candidate set for the pruned search: every balanced tree of stars with the
/// requested order and stability number, plus the path when its stability
/// number matches.
fn pruned_candidates(n: usize, alpha: usize) -> Vec<Tree> {
    let mut candidates: Vec<Tree> = enumerate_balanced_center_trees(n, alpha)
        .iter()
        .map(|ct| ct.realize().expect("enumerated center-trees are feasible"))
        .collect();
    if n.div_ceil(2) == alpha {
        candidates.push(Tree::path(n));
    }
    candidates
}

/// Minimum count over the structural candidate set only. Agrees with
/// [`extremal_exhaustive`] wherever both run, but handles much larger orders
/// because only `n - alpha` governs the search space.
pub fn extremal_pruned(n: usize, alpha: usize) -> Result<ExtremalRecord, ExtremalError> {
    if n == 1 {
        if alpha != 1 {
            return Err(ExtremalError::EmptyClass { n, alpha });
        }
        let single = Tree::path(1);
        return Ok(ExtremalRecord {
            n: 1,
            alpha: 1,
            f_min: merrifield_simmons(&single),
            minimizers: vec![canonical_code(&single)],
            method: Method::Pruned,
        });
    }
    if alpha > n - 1 || 2 * alpha < n {
        return Err(ExtremalError::EmptyClass { n, alpha });
    }
    if n - alpha > PRUNED_CENTER_LIMIT {
        return Err(ExtremalError::BudgetExceeded(format!(
            "n - alpha = {} exceeds the center-tree limit {PRUNED_CENTER_LIMIT}",
            n - alpha
        )));
    }
    let mut best = None;
    for tree in pruned_candidates(n, alpha) {
        debug_assert_eq!(tree.order(), n);
        debug_assert_eq!(stability_number(&tree), alpha);
        fold_tree(&mut best, &tree);
    }
    record_from_best(n, alpha, Method::Pruned, best)
}

/// One violation of a structural claim, with enough context to reproduce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub n: usize,
    pub alpha: usize,
    pub code: CanonicalCode,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} alpha={} tree={}: {}",
            self.n, self.alpha, self.code, self.detail
        )
    }
}

/// Result of checking that every exhaustive minimizer is a balanced tree of
/// stars or an odd path.
#[derive(Debug, Clone)]
pub struct StructureReport {
    pub max_n: usize,
    pub classes_checked: usize,
    pub minimizers_checked: usize,
    pub violations: Vec<Violation>,
}

impl StructureReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "structure: n <= {}, {} (n, alpha) classes, {} minimizers, {} violations",
            self.max_n,
            self.classes_checked,
            self.minimizers_checked,
            self.violations.len()
        )?;
        for v in &self.violations {
            writeln!(f, "  VIOLATION {v}")?;
        }
        Ok(())
    }
}

/// For every order up to `max_n` and every feasible stability number, checks
/// that each minimizer classifies as a balanced tree of stars or an odd path.
pub fn verify_structure_theorem(max_n: usize) -> Result<StructureReport, ExtremalError> {
    if max_n > EXHAUSTIVE_ORDER_LIMIT {
        return Err(ExtremalError::BudgetExceeded(format!(
            "max_n {max_n} exceeds the exhaustive limit {EXHAUSTIVE_ORDER_LIMIT}"
        )));
    }
    let mut report = StructureReport {
        max_n,
        classes_checked: 0,
        minimizers_checked: 0,
        violations: Vec::new(),
    };
    for n in 1..=max_n {
        for (alpha, record) in extremal_exhaustive_all(n)? {
            report.classes_checked += 1;
            for code in &record.minimizers {
                report.minimizers_checked += 1;
                let tree = code.decode().expect("minimizer codes decode");
                let ok = match classify(&tree) {
                    StructureClass::TreeOfStars { .. } => {
                        is_balanced(&tree).expect("classified as tree of stars")
                    }
                    StructureClass::OddPath => true,
                    _ => false,
                };
                if !ok {
                    report.violations.push(Violation {
                        n,
                        alpha,
                        code: code.clone(),
                        detail: format!("classified as {:?}", classify(&tree)),
                    });
                }
            }
        }
    }
    Ok(report)
}

/// The unique tree predicted for `(n, alpha)` when the light-center count is
/// at most 2: a balanced tree of stars whose center-tree is a path with the
/// light centers at its endpoints.
pub fn predicted_ctpath_tree(n: usize, alpha: usize) -> Option<Tree> {
    let hl = heavy_light(n, alpha).ok()?;
    if hl.light_count > 2 {
        return None;
    }
    let k = hl.heavy_count + hl.light_count;
    if hl.light_count > 0 && k < hl.light_count {
        return None;
    }
    let mut labels = vec![hl.heavy_size; k];
    if hl.light_count >= 1 {
        labels[0] = hl.light_size;
    }
    if hl.light_count == 2 {
        labels[k - 1] = hl.light_size;
    }
    let edges: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i + 1)).collect();
    CenterTree::new(k, &edges, labels).ok()?.realize().ok()
}

/// Result of checking the light-count <= 2 characterization in both
/// directions: the extremal set equals exactly the predicted singleton.
#[derive(Debug, Clone)]
pub struct CtPathReport {
    pub max_n: usize,
    pub pairs_checked: usize,
    pub violations: Vec<Violation>,
}

impl CtPathReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CtPathReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "center-tree path characterization: n <= {}, {} (n, alpha) pairs, {} violations",
            self.max_n,
            self.pairs_checked,
            self.violations.len()
        )?;
        for v in &self.violations {
            writeln!(f, "  VIOLATION {v}")?;
        }
        Ok(())
    }
}

/// For every `(n, alpha)` with `alpha > n/2` and at most two light centers,
/// checks that the exhaustive extremal set is exactly the predicted tree.
pub fn verify_ctpath_theorem(max_n: usize) -> Result<CtPathReport, ExtremalError> {
    if max_n > EXHAUSTIVE_ORDER_LIMIT {
        return Err(ExtremalError::BudgetExceeded(format!(
            "max_n {max_n} exceeds the exhaustive limit {EXHAUSTIVE_ORDER_LIMIT}"
        )));
    }
    let mut report = CtPathReport {
        max_n,
        pairs_checked: 0,
        violations: Vec::new(),
    };
    for n in 2..=max_n {
        let records = extremal_exhaustive_all(n)?;
        for alpha in (n / 2 + 1)..=(n - 1) {
            let Ok(hl) = heavy_light(n, alpha) else {
                continue;
            };
            if hl.light_count > 2 {
                continue;
            }
            report.pairs_checked += 1;
            let predicted = predicted_ctpath_tree(n, alpha)
                .expect("prediction exists whenever alpha > n/2 and light count <= 2");
            let predicted_code = canonical_code(&predicted);
            let record = records
                .get(&alpha)
                .expect("every feasible (n, alpha) has trees");
            if record.minimizers != vec![predicted_code.clone()] {
                report.violations.push(Violation {
                    n,
                    alpha,
                    code: predicted_code,
                    detail: format!(
                        "extremal set {:?} differs from the predicted singleton",
                        record.minimizers
                    ),
                });
            }
        }
    }
    Ok(report)
}

/// Atlas row: the extremal record for one stability number, with the
/// center-tree of every minimizer.
#[derive(Debug, Clone)]
pub struct AtlasEntry {
    pub alpha: usize,
    pub record: ExtremalRecord,
    pub center_trees: Vec<CenterTree>,
    pub heavy_light: HeavyLight,
}

impl AtlasEntry {
    /// Machine checks: every minimizer is a balanced tree of stars with the
    /// predicted heavy/light accounting, and in the light-count <= 2 regime
    /// its center-tree is a path with light centers at the endpoints.
    pub fn verify(&self, n: usize) -> Vec<String> {
        let mut problems = Vec::new();
        let hl = self.heavy_light;
        for (code, ct) in self.record.minimizers.iter().zip(&self.center_trees) {
            let tree = code.decode().expect("minimizer codes decode");
            match classify(&tree) {
                StructureClass::TreeOfStars { .. } if is_balanced(&tree).unwrap_or(false) => {}
                other => {
                    problems.push(format!("alpha={}: {code} classified {other:?}", self.alpha));
                    continue;
                }
            }
            let heavy = ct.labels().iter().filter(|&&l| l == hl.heavy_size).count();
            let light = ct.labels().iter().filter(|&&l| l == hl.light_size).count();
            if heavy != hl.heavy_count || light != hl.light_count || heavy + light != ct.size() {
                problems.push(format!(
                    "alpha={}: {code} has {heavy} heavy / {light} light centers, expected {} / {}",
                    self.alpha, hl.heavy_count, hl.light_count
                ));
            }
            if tree.order() != n {
                problems.push(format!("alpha={}: {code} has wrong order", self.alpha));
            }
            if hl.light_count <= 2 {
                let path_ok = ct.is_path();
                let lights_at_ends = ct
                    .labels()
                    .iter()
                    .enumerate()
                    .filter(|(_, &l)| l == hl.light_size && hl.light_count > 0)
                    .all(|(c, _)| ct.shape().degree(c) <= 1);
                if !(path_ok && lights_at_ends) {
                    problems.push(format!(
                        "alpha={}: {code} light count {} but center-tree is not a light-ended path",
                        self.alpha, hl.light_count
                    ));
                }
            }
        }
        problems
    }
}

/// Center-trees of all extremal trees of order `n`, for every stability
/// number above `n/2`, via the pruned search.
pub fn atlas(n: usize) -> Result<Vec<AtlasEntry>, ExtremalError> {
    let mut entries = Vec::new();
    for alpha in (n / 2 + 1)..=(n.saturating_sub(1)) {
        let record = extremal_pruned(n, alpha)?;
        let center_trees = record
            .minimizers
            .iter()
            .map(|code| {
                let tree = code.decode().expect("minimizer codes decode");
                crate::stars::center_tree(&tree).expect("extremal trees here are trees of stars")
            })
            .collect();
        entries.push(AtlasEntry {
            alpha,
            record,
            center_trees,
            heavy_light: heavy_light(n, alpha).expect("alpha range is feasible"),
        });
    }
    Ok(entries)
}

/// CSV with header `n,alpha,f_min,count,codes`; codes are semicolon-joined
/// sorted canonical codes.
pub fn records_to_csv(records: &[ExtremalRecord]) -> String {
    let mut out = String::from("n,alpha,f_min,count,codes\n");
    for r in records {
        let codes: Vec<&str> = r.minimizers.iter().map(|c| c.as_str()).collect();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n,
            r.alpha,
            r.f_min,
            r.minimizers.len(),
            codes.join(";")
        ));
    }
    out
}

#[derive(Serialize, Deserialize)]
struct RecordJson {
    n: usize,
    alpha: usize,
    f_min: String,
    count: usize,
    codes: Vec<CanonicalCode>,
}

/// JSON mirror of the CSV fields.
pub fn record_to_json(record: &ExtremalRecord) -> String {
    let json = RecordJson {
        n: record.n,
        alpha: record.alpha,
        f_min: record.f_min.to_string(),
        count: record.minimizers.len(),
        codes: record.minimizers.clone(),
    };
    serde_json::to_string_pretty(&json).expect("record serializes")
}

fn record_from_json(text: &str, method: Method) -> Result<ExtremalRecord, ExtremalError> {
    let json: RecordJson =
        serde_json::from_str(text).map_err(|e| ExtremalError::Cache(e.to_string()))?;
    let f_min = Count::from_str(&json.f_min)
        .map_err(|e| ExtremalError::Cache(format!("bad f_min: {e}")))?;
    if json.codes.len() != json.count {
        return Err(ExtremalError::Cache("count does not match codes".into()));
    }
    Ok(ExtremalRecord {
        n: json.n,
        alpha: json.alpha,
        f_min,
        minimizers: json.codes,
        method,
    })
}

/// Runs the requested search with a directory cache keyed by
/// `(n, alpha, method)`.
pub fn extremal_cached(
    n: usize,
    alpha: usize,
    method: Method,
    dir: &Path,
) -> Result<ExtremalRecord, ExtremalError> {
    let path = dir.join(format!("{n}_{alpha}_{method}.json"));
    if path.exists() {
        let text =
            std::fs::read_to_string(&path).map_err(|e| ExtremalError::Cache(e.to_string()))?;
        let record = record_from_json(&text, method)?;
        if record.n != n || record.alpha != alpha {
            return Err(ExtremalError::Cache(format!(
                "cache file {} holds a record for n={} alpha={}",
                path.display(),
                record.n,
                record.alpha
            )));
        }
        return Ok(record);
    }
    let record = match method {
        Method::Exhaustive => extremal_exhaustive(n, alpha)?,
        Method::Pruned => extremal_pruned(n, alpha)?,
    };
    std::fs::create_dir_all(dir).map_err(|e| ExtremalError::Cache(e.to_string()))?;
    std::fs::write(&path, record_to_json(&record))
        .map_err(|e| ExtremalError::Cache(e.to_string()))?;
    Ok(record)
}
