//! The edge-rotation calculus.
//!
//! A rotation `(yx, yx')` removes the edge `yx` and reattaches `y` to a
//! vertex `x'` in the component of `T - yx` containing `x`. A rotation is
//! *good* if it preserves the stability number and strictly decreases the
//! stable-set count; exhibiting a good rotation proves a tree non-extremal.
//!
//! Writing `X, X̄` for the count products over the pendant branches at `x`
//! (with and without their attachment vertices), `X', X̄'` for the same at
//! `x'`, `Y, Ȳ` for `y`'s side, and `Z`-counts for the corridor strictly
//! between `x` and `x'`, the exact identity
//!
//! ```text
//! F(T) - F(rho(T)) = (X X̄' Z̄_far - X̄ X' Z̄_near) * (Y - Ȳ)
//! ```
//!
//! holds, so the sign of the count change is decided by comparing two
//! products of exact integers. [`decompose`] produces the ten counts,
//! [`is_good`] runs the sign test, and [`construct_good_rotation_nontos`] /
//! [`rebalance_rotation`] build good rotations constructively for trees that
//! are not trees of stars and for unbalanced trees of stars respectively.

use crate::stars::{classify, tos_centers, StructureClass};
use crate::tree::{count_on, merrifield_simmons, stability_number, Count, Tree};
use num::bigint::BigInt;
use num::One;
use std::collections::BTreeSet;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotationError {
    #[error("invalid rotation ({y} {x} {x_new}): {reason}")]
    InvalidRotation {
        y: usize,
        x: usize,
        x_new: usize,
        reason: &'static str,
    },
    #[error("no constructive rotation applies: {0}")]
    NotApplicable(&'static str),
    #[error("bad rotation syntax {0:?}, expected \"y x xnew\"")]
    Syntax(String),
}

/// The rotation `(yx, yx')`: `y` detaches from `x` and reattaches to `x_new`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rotation {
    pub y: usize,
    pub x: usize,
    pub x_new: usize,
}

impl Rotation {
    fn invalid(self, reason: &'static str) -> RotationError {
        RotationError::InvalidRotation {
            y: self.y,
            x: self.x,
            x_new: self.x_new,
            reason,
        }
    }

    /// Checks the rotation invariants in `tree`: `y` adjacent to `x`,
    /// `x_new != x`, and `x_new` inside the component of `T - xy` holding `x`.
    pub fn validate(self, tree: &Tree) -> Result<(), RotationError> {
        let n = tree.order();
        for v in [self.y, self.x, self.x_new] {
            if v >= n {
                return Err(self.invalid("vertex out of range"));
            }
        }
        if !tree.neighbors(self.y).contains(&self.x) {
            return Err(self.invalid("y is not adjacent to x"));
        }
        if self.x_new == self.x {
            return Err(self.invalid("x_new equals x"));
        }
        if !x_side_of_cut(tree, self.x, self.y)[self.x_new] {
            return Err(self.invalid("x_new is not in x's component of T - xy"));
        }
        Ok(())
    }
}

impl FromStr for Rotation {
    type Err = RotationError;

    fn from_str(s: &str) -> Result<Self, RotationError> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let [y, x, x_new] = parts[..] else {
            return Err(RotationError::Syntax(s.to_string()));
        };
        let parse = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| RotationError::Syntax(s.to_string()))
        };
        Ok(Rotation {
            y: parse(y)?,
            x: parse(x)?,
            x_new: parse(x_new)?,
        })
    }
}

/// Membership mask of the component of `T - xy` containing `x`.
fn x_side_of_cut(tree: &Tree, x: usize, y: usize) -> Vec<bool> {
    let mut mask = vec![false; tree.order()];
    mask[x] = true;
    let mut stack = vec![x];
    while let Some(v) = stack.pop() {
        for &w in tree.neighbors(v) {
            if (v, w) == (x, y) || (w, v) == (x, y) {
                continue;
            }
            if !mask[w] {
                mask[w] = true;
                stack.push(w);
            }
        }
    }
    mask
}

/// Vertices of the unique path from `a` to `b`, inclusive.
fn tree_path(tree: &Tree, a: usize, b: usize) -> Vec<usize> {
    let n = tree.order();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    seen[a] = true;
    queue.push_back(a);
    while let Some(v) = queue.pop_front() {
        if v == b {
            break;
        }
        for &w in tree.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![b];
    let mut v = b;
    while v != a {
        v = parent[v];
        path.push(v);
    }
    path.reverse();
    path
}

/// Applies the rotation, producing a valid tree on the same vertex set.
pub fn apply_rotation(tree: &Tree, rot: Rotation) -> Result<Tree, RotationError> {
    rot.validate(tree)?;
    let (lo, hi) = (rot.x.min(rot.y), rot.x.max(rot.y));
    let mut edges: Vec<(usize, usize)> = tree
        .edges()
        .into_iter()
        .filter(|&e| e != (lo, hi))
        .collect();
    edges.push((rot.y.min(rot.x_new), rot.y.max(rot.x_new)));
    Ok(Tree::from_edges(tree.order(), &edges).expect("rotation preserves treeness"))
}

/// The ten exact counts attached to a (tree, rotation) pair.
///
/// `near` is the neighbor of `x` on the `x`-`x_new` path and `far` the
/// neighbor of `x_new` on it; both are absent exactly when `x` and `x_new`
/// are adjacent, in which case every corridor count is 1 by convention.
/// "Pruned" products remove each branch's attachment vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationDecomposition {
    pub x_branches: Count,
    pub x_branches_pruned: Count,
    pub xnew_branches: Count,
    pub xnew_branches_pruned: Count,
    pub y_side: Count,
    pub y_side_pruned: Count,
    pub corridor: Count,
    pub corridor_no_near: Count,
    pub corridor_no_far: Count,
    pub corridor_no_ends: Count,
    pub near: Option<usize>,
    pub far: Option<usize>,
}

impl RotationDecomposition {
    /// Exact sign test: the rotation strictly decreases the stable-set count
    /// iff `X X̄' Z̄_far > X̄ X' Z̄_near`.
    pub fn strictly_decreases_count(&self) -> bool {
        &self.x_branches * &self.xnew_branches_pruned * &self.corridor_no_far
            > &self.x_branches_pruned * &self.xnew_branches * &self.corridor_no_near
    }

    /// The factored form of `F(T) - F(rho(T))`.
    pub fn count_delta(&self) -> BigInt {
        let left = BigInt::from(&self.x_branches * &self.xnew_branches_pruned * &self.corridor_no_far);
        let right =
            BigInt::from(&self.x_branches_pruned * &self.xnew_branches * &self.corridor_no_near);
        let swing = BigInt::from(&self.y_side - &self.y_side_pruned);
        (left - right) * swing
    }
}

/// Computes the ten counts of the decomposition by exact counting on the
/// named components of `T - {x, x_new}` and their deletions.
pub fn decompose(tree: &Tree, rot: Rotation) -> Result<RotationDecomposition, RotationError> {
    rot.validate(tree)?;
    let n = tree.order();
    let Rotation { y, x, x_new } = rot;
    let path = tree_path(tree, x, x_new);
    let adjacent = path.len() == 2;
    let toward_xnew = path[1];
    let toward_x = path[path.len() - 2];

    // Component ids of T - {x, x_new}; removed vertices get usize::MAX.
    let mut comp = vec![usize::MAX; n];
    let mut next_comp = 0;
    for start in 0..n {
        if start == x || start == x_new || comp[start] != usize::MAX {
            continue;
        }
        comp[start] = next_comp;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in tree.neighbors(v) {
                if w != x && w != x_new && comp[w] == usize::MAX {
                    comp[w] = next_comp;
                    stack.push(w);
                }
            }
        }
        next_comp += 1;
    }

    let count_component = |root: usize, removed: &[usize]| -> Count {
        let alive: Vec<bool> = (0..n)
            .map(|v| comp[v] != usize::MAX && comp[v] == comp[root] && !removed.contains(&v))
            .collect();
        count_on(tree.adjacency(), &alive)
    };

    let mut x_branches = Count::one();
    let mut x_branches_pruned = Count::one();
    for &b in tree.neighbors(x) {
        if b == y || b == toward_xnew {
            continue;
        }
        x_branches *= count_component(b, &[]);
        x_branches_pruned *= count_component(b, &[b]);
    }
    let mut xnew_branches = Count::one();
    let mut xnew_branches_pruned = Count::one();
    for &b in tree.neighbors(x_new) {
        if b == toward_x {
            continue;
        }
        xnew_branches *= count_component(b, &[]);
        xnew_branches_pruned *= count_component(b, &[b]);
    }
    let y_side = count_component(y, &[]);
    let y_side_pruned = count_component(y, &[y]);
    let (corridor, corridor_no_near, corridor_no_far, corridor_no_ends) = if adjacent {
        (Count::one(), Count::one(), Count::one(), Count::one())
    } else {
        let near = path[1];
        let far = path[path.len() - 2];
        (
            count_component(near, &[]),
            count_component(near, &[near]),
            count_component(near, &[far]),
            count_component(near, &[near, far]),
        )
    };
    Ok(RotationDecomposition {
        x_branches,
        x_branches_pruned,
        xnew_branches,
        xnew_branches_pruned,
        y_side,
        y_side_pruned,
        corridor,
        corridor_no_near,
        corridor_no_far,
        corridor_no_ends,
        near: (!adjacent).then_some(path[1]),
        far: (!adjacent).then_some(path[path.len() - 2]),
    })
}

/// Returns `(F(T) - F(rho(T)), factored form)`; the two are equal for every
/// valid rotation.
pub fn f_delta_identity(tree: &Tree, rot: Rotation) -> Result<(BigInt, BigInt), RotationError> {
    let decomposition = decompose(tree, rot)?;
    let rotated = apply_rotation(tree, rot)?;
    let direct = BigInt::from(merrifield_simmons(tree)) - BigInt::from(merrifield_simmons(&rotated));
    Ok((direct, decomposition.count_delta()))
}

/// A rotation is good when it preserves the stability number and strictly
/// decreases the stable-set count (decided by the exact sign test).
pub fn is_good(tree: &Tree, rot: Rotation) -> Result<bool, RotationError> {
    let decomposition = decompose(tree, rot)?;
    if !decomposition.strictly_decreases_count() {
        return Ok(false);
    }
    let rotated = apply_rotation(tree, rot)?;
    Ok(stability_number(tree) == stability_number(&rotated))
}

/// Exhaustive scan for a good rotation in a fixed order: `y` ascending, `x`
/// ascending over the neighbors of `y`, `x_new` ascending. Returns the first
/// hit, so the result is reproducible.
pub fn find_good_rotation(tree: &Tree) -> Option<Rotation> {
    let n = tree.order();
    for y in 0..n {
        for &x in tree.neighbors(y) {
            let side = x_side_of_cut(tree, x, y);
            for x_new in 0..n {
                if x_new == x || !side[x_new] {
                    continue;
                }
                let rot = Rotation { y, x, x_new };
                if is_good(tree, rot).expect("scan only emits valid rotations") {
                    return Some(rot);
                }
            }
        }
    }
    None
}

/// Rooted view of the tree used by the witness procedure.
struct Rooted {
    parent: Vec<usize>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    /// Vertices in BFS order from the root.
    order: Vec<usize>,
}

fn root_at(tree: &Tree, root: usize) -> Rooted {
    let n = tree.order();
    let mut parent = vec![usize::MAX; n];
    let mut children = vec![Vec::new(); n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    seen[root] = true;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in tree.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                depth[w] = depth[v] + 1;
                children[v].push(w);
                order.push(w);
            }
        }
    }
    Rooted {
        parent,
        children,
        depth,
        order,
    }
}

/// Extracts the induced subtree on `keep` (must be connected) as a Tree,
/// renumbered in increasing original-id order.
fn induced_tree(tree: &Tree, keep: &BTreeSet<usize>) -> Tree {
    let removed: Vec<usize> = (0..tree.order()).filter(|v| !keep.contains(v)).collect();
    Tree::from_forest(tree.as_forest().delete(&removed)).expect("induced set is connected")
}

fn is_tos_subset(tree: &Tree, keep: &BTreeSet<usize>) -> bool {
    tos_centers(&induced_tree(tree, keep)).is_some()
}

/// Count of stable sets of the induced subgraph on `keep`.
fn count_subset(tree: &Tree, keep: &BTreeSet<usize>) -> Count {
    let alive: Vec<bool> = (0..tree.order()).map(|v| keep.contains(&v)).collect();
    count_on(tree.adjacency(), &alive)
}

/// Constructive good rotation for a tree that is neither a tree of stars nor
/// a path, following the witness procedure: root at a leaf whose removal
/// keeps the tree away from the degenerate re-rooting case, take a deepest
/// witness (the highest ancestor whose subtree is a tree of stars with that
/// ancestor as one of its leaves), and dispatch on how the witness's
/// grandparent sees its other branches.
pub fn construct_good_rotation_nontos(tree: &Tree) -> Result<Rotation, RotationError> {
    if tree.is_path() {
        return Err(RotationError::NotApplicable("tree is a path"));
    }
    if classify(tree).is_tree_of_stars() {
        return Err(RotationError::NotApplicable("tree is a tree of stars"));
    }
    let n = tree.order();
    let all: BTreeSet<usize> = (0..n).collect();

    // Root selection: if the chosen leaf r has a degree-2 neighbor and T - r
    // is a tree of stars, re-root at a leaf of a component of T - w away
    // from r, where w is a branch vertex of T - r.
    let mut root = *tree.leaves().first().expect("a tree has a leaf");
    let neighbor = tree.neighbors(root)[0];
    let mut without_root = all.clone();
    without_root.remove(&root);
    if tree.degree(neighbor) == 2 && is_tos_subset(tree, &without_root) {
        let branch = (0..n)
            .find(|&v| {
                let deg = tree.degree(v) - usize::from(tree.neighbors(v).contains(&root));
                v != root && deg >= 3
            })
            .expect("a non-path tree of stars has a branch vertex");
        let side_with_root = {
            let mut mask = vec![false; n];
            mask[root] = true;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &w in tree.neighbors(v) {
                    if w != branch && !mask[w] {
                        mask[w] = true;
                        stack.push(w);
                    }
                }
            }
            mask
        };
        root = (0..n)
            .find(|&v| v != branch && !side_with_root[v] && tree.degree(v) == 1)
            .expect("every component of T - w holds a leaf of T");
        without_root = all.clone();
        without_root.remove(&root);
        debug_assert!(
            !(tree.degree(tree.neighbors(root)[0]) == 2 && is_tos_subset(tree, &without_root))
        );
    }

    let rooted = root_at(tree, root);
    // Subtree vertex sets and their tree-of-stars status.
    let mut subtree: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &v in rooted.order.iter().rev() {
        let mut set = BTreeSet::from([v]);
        for &c in &rooted.children[v] {
            set.extend(subtree[c].iter().copied());
        }
        subtree[v] = set;
    }
    let sub_tos: Vec<bool> = (0..n).map(|v| is_tos_subset(tree, &subtree[v])).collect();
    let eligible = |v: usize| sub_tos[v] && rooted.children[v].len() <= 1;

    // Witness of each rooted leaf: the highest eligible ancestor.
    let mut witnesses = BTreeSet::new();
    for u in 0..n {
        if !rooted.children[u].is_empty() {
            continue;
        }
        debug_assert!(eligible(u));
        let mut wit = u;
        let mut a = rooted.parent[u];
        while a != usize::MAX {
            if eligible(a) {
                wit = a;
            }
            a = rooted.parent[a];
        }
        witnesses.insert(wit);
    }
    debug_assert!(!witnesses.contains(&root));
    let deepest = witnesses
        .iter()
        .copied()
        .max_by_key(|&w| (rooted.depth[w], std::cmp::Reverse(w)))
        .expect("at least one witness");

    let attach = rooted.parent[deepest];
    debug_assert_ne!(attach, root, "rules out the degenerate root");
    let pivot = rooted.parent[attach];
    let pivot_parent = rooted.parent[pivot];
    debug_assert_ne!(pivot, root, "pivot has a parent");

    let branch_set = &subtree[attach];
    debug_assert!(is_tos_subset(tree, &{
        let mut plus = branch_set.clone();
        plus.insert(pivot);
        plus
    }));

    // Condition (C1) at a sibling branch: the branch alone is a tree of stars
    // with its attachment vertex as a leaf. (C2): the branch plus the pivot
    // is a tree of stars. The theory guarantees one of the two.
    let mut any_plain_tos_sibling = false;
    for &sib in &rooted.children[pivot] {
        if sib == attach {
            continue;
        }
        let c1 = sub_tos[sib] && rooted.children[sib].len() <= 1;
        if c1 {
            any_plain_tos_sibling = true;
        } else {
            debug_assert!(is_tos_subset(tree, &{
                let mut plus = subtree[sib].clone();
                plus.insert(pivot);
                plus
            }));
        }
    }

    let in_branch_degree =
        |v: usize| tree.neighbors(v).iter().filter(|w| branch_set.contains(w)).count();
    let spare_leaf = branch_set
        .iter()
        .copied()
        .find(|&v| v != attach && in_branch_degree(v) <= 1)
        .expect("a branch of order >= 2 has a leaf besides its attachment");

    let rot = if any_plain_tos_sibling {
        let branch_is_path = branch_set.iter().all(|&v| in_branch_degree(v) <= 2);
        if branch_is_path && rooted.children[attach].len() == 1 {
            // The branch hangs as a path off the pivot: move the pivot's
            // parent edge down to the branch's spare end.
            Rotation {
                y: pivot_parent,
                x: pivot,
                x_new: spare_leaf,
            }
        } else {
            // Reattach the pivot from the branch root to the spare leaf.
            Rotation {
                y: pivot,
                x: attach,
                x_new: spare_leaf,
            }
        }
    } else {
        // Every sibling needs the pivot to complete its tree of stars.
        // Compare the two corridor counts to pick between detaching the
        // pivot's parent edge and re-aiming the branch edge.
        let spare_neighbor = tree.neighbors(spare_leaf)[0];
        let mut no_near = branch_set.clone();
        no_near.remove(&spare_leaf);
        no_near.remove(&attach);
        let mut no_far = branch_set.clone();
        no_far.remove(&spare_leaf);
        no_far.remove(&spare_neighbor);
        if count_subset(tree, &no_near) <= count_subset(tree, &no_far) {
            Rotation {
                y: pivot_parent,
                x: pivot,
                x_new: spare_leaf,
            }
        } else {
            Rotation {
                y: pivot,
                x: attach,
                x_new: spare_neighbor,
            }
        }
    };
    rot.validate(tree)?;
    Ok(rot)
}

/// Rebalancing rotation for an unbalanced tree of stars: detach a neighbor
/// `y` of a maximum-degree center `x` (off the `x`-`x'` path) and reattach it
/// to a minimum-degree center `x'`. The result is again a tree of stars with
/// the same center set, so the stability number is preserved, and the count
/// strictly decreases. Ties are broken by smallest vertex id.
pub fn rebalance_rotation(tree: &Tree) -> Result<Rotation, RotationError> {
    let centers = match classify(tree) {
        StructureClass::TreeOfStars { centers } => centers,
        _ => return Err(RotationError::NotApplicable("not a tree of stars")),
    };
    let degrees: Vec<(usize, usize)> = centers.iter().map(|&c| (c, tree.degree(c))).collect();
    let max_deg = degrees.iter().map(|&(_, d)| d).max().unwrap_or(0);
    let min_deg = degrees.iter().map(|&(_, d)| d).min().unwrap_or(0);
    if max_deg <= min_deg + 1 {
        return Err(RotationError::NotApplicable("tree of stars is balanced"));
    }
    let x = degrees.iter().find(|&&(_, d)| d == max_deg).unwrap().0;
    let x_new = degrees.iter().find(|&&(_, d)| d == min_deg).unwrap().0;
    let path: BTreeSet<usize> = tree_path(tree, x, x_new).into_iter().collect();
    let y = tree
        .neighbors(x)
        .iter()
        .copied()
        .find(|v| !path.contains(v))
        .expect("a heavy center has a neighbor off the path");
    let rot = Rotation { y, x, x_new };
    rot.validate(tree)?;
    Ok(rot)
}
