//! The bijection between marked vertices of outdegree at least `k` at
//! level at least `l` and lattice paths from `(k, k)` to `(2n, -2l)`.
//!
//! Forward direction: decompose the tree around the marked vertex, lay the
//! pieces out as one lattice path, reflect the suffix after the first
//! crossing of `y = -l - 1`, and trim a fixed prefix and suffix. Every
//! stage is reversible, which gives the inverse.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::counts;
use crate::path::{phi, phi_inv, psi, psi_inv, reflect_suffix, DyckPath, LatticePath, Step};
use crate::tree::{MarkedTree, Tree};

/// The pieces of a tree around a marked vertex `v` at level `l'` with
/// outdegree `k'`.
///
/// Reassembling with [`recompose`] reproduces the marked tree exactly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    /// The subtree of all descendants, rooted at the marked vertex.
    pub descendants: Tree,
    /// `l'` ordered forests, one per level `1..=l'`: entry `i - 1` holds
    /// the right siblings of the spine vertex at level `l' + 1 - i` (so the
    /// first entry belongs to the marked vertex itself, the last to the
    /// level-1 spine vertex). Each forest is stored as the children of an
    /// implicit root.
    pub right_forests: Vec<Tree>,
    /// What remains: the spine from the root to the marked vertex, all
    /// left siblings with their subtrees, and the marked vertex as the
    /// last preorder vertex, a leaf at level `l'`.
    pub remainder: Tree,
    /// Outdegree `k'` of the marked vertex.
    pub mark_outdegree: u32,
    /// Level `l'` of the marked vertex.
    pub mark_level: u32,
}

/// Splits a marked tree into descendants, right-side forests, and the
/// remainder.
pub fn decompose(marked: &MarkedTree) -> Decomposition {
    let path = marked.tree().path_to(marked.mark()).expect("mark is valid");
    let mut remainder = marked.tree().clone();
    let mut forests_top_down = Vec::with_capacity(path.len());
    let mut node = &mut remainder;
    for &child_index in &path {
        forests_top_down.push(Tree::from_children(node.children.split_off(child_index + 1)));
        node = &mut node.children[child_index];
    }
    let descendants = Tree::from_children(core::mem::take(&mut node.children));
    // Collected from the root down; the forest of the marked vertex's own
    // right siblings comes first in the stored order.
    forests_top_down.reverse();
    let mark_outdegree = descendants.children.len() as u32;
    let mark_level = path.len() as u32;
    debug_assert_eq!(remainder.edge_count(), remainder.vertex_count() - 1);
    Decomposition {
        descendants,
        right_forests: forests_top_down,
        remainder,
        mark_outdegree,
        mark_level,
    }
}

/// Inverse of [`decompose`].
pub fn recompose(parts: &Decomposition) -> Result<MarkedTree, RecomposeError> {
    let levels = parts.right_forests.len();
    if levels as u32 != parts.mark_level {
        return Err(RecomposeError::ForestCountMismatch {
            forests: levels,
            mark_level: parts.mark_level,
        });
    }
    if parts.descendants.children.len() as u32 != parts.mark_outdegree {
        return Err(RecomposeError::OutdegreeMismatch {
            children: parts.descendants.children.len(),
            mark_outdegree: parts.mark_outdegree,
        });
    }
    let mut tree = parts.remainder.clone();
    // The marked vertex is the last preorder vertex of the remainder:
    // follow last children to the deepest rightmost leaf.
    let mut spine = Vec::with_capacity(levels);
    {
        let mut node = &tree;
        while let Some(last) = node.children.last() {
            spine.push(node.children.len() - 1);
            node = last;
        }
    }
    if spine.len() != levels {
        return Err(RecomposeError::LastVertexNotAtLevel {
            found: spine.len(),
            expected: levels,
        });
    }
    tree.node_at_mut(&spine).children = parts.descendants.children.clone();
    for (i, forest) in parts.right_forests.iter().enumerate() {
        // Forest i (zero-based) re-attaches beside the spine vertex at
        // level `levels - i`, i.e. under its parent at level `levels-i-1`.
        let parent = tree.node_at_mut(&spine[..levels - 1 - i]);
        parent.children.extend(forest.children.iter().cloned());
    }
    let mark = tree.preorder_index(&spine);
    Ok(MarkedTree::new(tree, mark).expect("spine index is valid"))
}

/// Lays the decomposition out as a single path:
///
/// ```text
/// P = psi(D_v)  D  phi(R_1)  D  ...  D  phi(R_l')  D  phi(L)
/// ```
///
/// one separating down-step before each `phi` component. The result runs
/// from `(0, 0)` to `(2n + l' + 1, -l' - 1)`.
pub fn assemble_path(parts: &Decomposition) -> LatticePath {
    let mut steps = psi(&parts.descendants).into_path().into_steps();
    for forest in &parts.right_forests {
        steps.push(Step::Down);
        steps.extend_from_slice(phi(forest).steps());
    }
    steps.push(Step::Down);
    steps.extend_from_slice(phi(&parts.remainder).steps());
    LatticePath::from_origin(steps)
}

/// The set of lattice paths from `(k, k)` to `(2n, -2l)` built from
/// `n - k - l` up-steps and `n + l` down-steps.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PathSet {
    pub n: u32,
    pub k: u32,
    pub l: u32,
}

impl PathSet {
    pub fn new(n: u32, k: u32, l: u32) -> Self {
        PathSet { n, k, l }
    }

    /// `C(2n - k, n + l)`; zero when `n - k - l < 0`.
    pub fn size(&self) -> BigUint {
        counts::binomial(
            2 * i64::from(self.n) - i64::from(self.k),
            i64::from(self.n) + i64::from(self.l),
        )
    }

    pub fn contains(&self, path: &LatticePath) -> bool {
        self.check(path).is_ok()
    }

    /// Membership test with a reason on failure.
    pub fn check(&self, path: &LatticePath) -> Result<(), String> {
        use alloc::format;
        let (n, k, l) = (i64::from(self.n), i64::from(self.k), i64::from(self.l));
        if n - k - l < 0 {
            return Err(format!("the set is empty: n - k - l = {} is negative", n - k - l));
        }
        if path.start() != (k, k) {
            return Err(format!("path starts at {:?}, not ({k},{k})", path.start()));
        }
        if path.len() as i64 != 2 * n - k {
            return Err(format!("path length is {}, not {}", path.len(), 2 * n - k));
        }
        if path.up_count() as i64 != n - k - l {
            return Err(format!("path has {} up-steps, not {}", path.up_count(), n - k - l));
        }
        debug_assert_eq!(path.end(), (2 * n, -2 * l));
        Ok(())
    }
}

/// Maps a marked vertex of outdegree at least `k` at level at least `l`
/// to its lattice path in [`PathSet`] `(n, k, l)`.
pub fn phi_map(marked: &MarkedTree, k: u32, l: u32) -> Result<LatticePath, PhiMapError> {
    let st = marked.mark_stats();
    if st.outdegree < k {
        return Err(PhiMapError::NotInDomain {
            condition: alloc::format!("outdegree is {}, below the threshold {k}", st.outdegree),
        });
    }
    if st.level < l {
        return Err(PhiMapError::NotInDomain {
            condition: alloc::format!("level is {}, below the threshold {l}", st.level),
        });
    }
    let n = marked.tree().edge_count();
    let parts = decompose(marked);
    let deep = parts.mark_level as usize;

    let assembled = assemble_path(&parts);
    assert_eq!(assembled.len(), 2 * n + deep + 1, "assembled path length");
    assert_eq!(assembled.end().1, -(deep as i64) - 1, "assembled path end height");

    let reflected =
        reflect_suffix(&assembled, -i64::from(l) - 1).expect("P descends to -l'-1 <= -l-1");
    let steps = reflected.steps();
    let len = steps.len();
    assert!(
        steps[..k as usize].iter().all(|s| *s == Step::Up),
        "reflected path keeps the k' >= k leading up-steps"
    );
    assert_eq!(steps[len - deep - 1], Step::Down, "reflected path tail");
    assert!(steps[len - deep..].iter().all(|s| *s == Step::Up), "reflected path tail");

    let trimmed = steps[k as usize..len - deep - 1].to_vec();
    let result = LatticePath::new((i64::from(k), i64::from(k)), trimmed);
    let n32 = u32::try_from(n).expect("edge count fits in u32");
    assert!(PathSet::new(n32, k, l).contains(&result), "image lies in the path set");
    Ok(result)
}

/// Inverse of [`phi_map`]. `path` must be a member of [`PathSet`]
/// `(n, k, l)`.
pub fn phi_map_inv(
    path: &LatticePath,
    n: u32,
    k: u32,
    l: u32,
) -> Result<MarkedTree, PhiMapError> {
    PathSet::new(n, k, l).check(path).map_err(|reason| PhiMapError::PathOutsideSet { reason })?;

    // Undo the trimming: restore the k leading up-steps and the first of
    // the l' + 1 trailing steps (the rest are recovered below).
    let mut steps = vec![Step::Up; k as usize];
    steps.extend_from_slice(path.steps());
    steps.push(Step::Down);
    let extended = LatticePath::from_origin(steps);

    // Undo the reflection. The extension ends at height -2l - 1, so the
    // line y = -l - 1 is always crossed.
    let unreflected = reflect_suffix(&extended, -i64::from(l) - 1).expect("extension crosses");
    let min = unreflected.min_height();
    assert!(min <= -1, "the separator down-steps reach below zero");
    let deep = (-min - 1) as usize;
    assert!(deep as u32 >= l, "recovered level dominates the threshold");

    // Restore the trailing l' down-steps of the assembled path.
    let mut assembled = unreflected.into_steps();
    assembled.extend(core::iter::repeat_n(Step::Down, deep));

    // Cut at the first passages below 0, -1, ..., -l': the pieces are
    // psi(D_v), phi(R_1), ..., phi(R_l'), phi(L).
    let mut segments: Vec<Vec<Step>> = Vec::with_capacity(deep + 2);
    let mut current = Vec::new();
    let mut height = 0i64;
    let mut next_passage = -1i64;
    let last_passage = -(deep as i64) - 1;
    for step in assembled {
        height += step.dy();
        if height == next_passage && next_passage >= last_passage {
            segments.push(core::mem::take(&mut current));
            next_passage -= 1;
        } else {
            current.push(step);
        }
    }
    segments.push(current);
    assert_eq!(height, last_passage, "assembled path ends at -l' - 1");
    assert_eq!(segments.len(), deep + 2, "one segment per decomposition piece");

    let mut pieces = segments.into_iter();
    let as_dyck = |steps: Vec<Step>| {
        DyckPath::new(steps).expect("a first-passage segment never dips below its baseline")
    };
    let descendants = psi_inv(&as_dyck(pieces.next().expect("psi segment")));
    let right_forests: Vec<Tree> =
        (0..deep).map(|_| phi_inv(&as_dyck(pieces.next().expect("forest segment")))).collect();
    let remainder = phi_inv(&as_dyck(pieces.next().expect("remainder segment")));

    let mark_outdegree = descendants.children.len() as u32;
    let parts = Decomposition {
        descendants,
        right_forests,
        remainder,
        mark_outdegree,
        mark_level: deep as u32,
    };
    let marked = recompose(&parts).expect("decoded pieces reassemble");
    assert_eq!(marked.tree().edge_count(), n as usize, "edge count is restored");
    let st = marked.mark_stats();
    assert!(st.outdegree >= k && st.level >= l, "result lies in the domain");
    Ok(marked)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiMapError {
    /// The marked vertex misses an outdegree or level threshold.
    NotInDomain { condition: String },
    /// The input path is not a member of the stated path set.
    PathOutsideSet { reason: String },
}

impl fmt::Display for PhiMapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiMapError::NotInDomain { condition } => write!(f, "not in the marked class: {condition}"),
            PhiMapError::PathOutsideSet { reason } => write!(f, "path outside the target set: {reason}"),
        }
    }
}

impl core::error::Error for PhiMapError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecomposeError {
    ForestCountMismatch { forests: usize, mark_level: u32 },
    OutdegreeMismatch { children: usize, mark_outdegree: u32 },
    /// The last preorder vertex of the remainder is not at level
    /// `mark_level`.
    LastVertexNotAtLevel { found: usize, expected: usize },
}

impl fmt::Display for RecomposeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecomposeError::ForestCountMismatch { forests, mark_level } => write!(
                f,
                "decomposition holds {forests} right forests but claims level {mark_level}"
            ),
            RecomposeError::OutdegreeMismatch { children, mark_outdegree } => write!(
                f,
                "descendant subtree has {children} children but claims outdegree {mark_outdegree}"
            ),
            RecomposeError::LastVertexNotAtLevel { found, expected } => write!(
                f,
                "last preorder vertex of the remainder is at level {found}, expected {expected}"
            ),
        }
    }
}

impl core::error::Error for RecomposeError {}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn m(s: &str) -> MarkedTree {
        s.parse().unwrap()
    }

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let parts = decompose(&m("(())@1"));
        assert_eq!(parts.descendants, t("()"));
        assert_eq!(parts.right_forests, vec![Tree::leaf()]);
        assert_eq!(parts.remainder, t("()"));
        assert_eq!((parts.mark_outdegree, parts.mark_level), (1, 1));

        let parts = decompose(&m("()(())@0"));
        assert_eq!(parts.descendants, t("()(())"));
        assert!(parts.right_forests.is_empty());
        assert_eq!(parts.remainder, Tree::leaf());
        assert_eq!((parts.mark_outdegree, parts.mark_level), (2, 0));

        let parts = decompose(&m("()(())@3"));
        assert_eq!(parts.descendants, Tree::leaf());
        assert_eq!(parts.right_forests, vec![Tree::leaf(), Tree::leaf()]);
        assert_eq!(parts.remainder, t("()(())"));
        assert_eq!((parts.mark_outdegree, parts.mark_level), (0, 2));
    }

    #[test]
    fn decompose_splits_right_siblings() {
        // The marked vertex keeps its left context in the remainder; right
        // siblings along the spine go to the forests.
        let parts = decompose(&m("(()()(()))(())@2"));
        assert_eq!(parts.descendants, Tree::leaf());
        assert_eq!(parts.remainder, t("(())"));
        assert_eq!(parts.right_forests.len(), 2);
        assert_eq!(parts.right_forests[0], t("()(())"));
        assert_eq!(parts.right_forests[1], t("(())"));
    }

    #[test]
    fn recompose_round_trips_exhaustively() {
        for n in 0..=7u32 {
            for tree in crate::tree::enumerate_trees(n) {
                for v in 0..tree.vertex_count() {
                    let marked = MarkedTree::new(tree.clone(), v).unwrap();
                    let parts = decompose(&marked);
                    let edges = parts.descendants.edge_count()
                        + parts.right_forests.iter().map(Tree::edge_count).sum::<usize>()
                        + parts.remainder.edge_count();
                    assert_eq!(edges, n as usize, "edge split is conservative");
                    assert_eq!(recompose(&parts).unwrap(), marked);
                }
            }
        }
    }

    #[test]
    fn recompose_rejects_inconsistent_parts() {
        let mut parts = decompose(&m("(())@1"));
        parts.mark_level = 2;
        assert!(matches!(recompose(&parts), Err(RecomposeError::ForestCountMismatch { .. })));

        let mut parts = decompose(&m("(())@1"));
        parts.mark_outdegree = 5;
        assert!(matches!(recompose(&parts), Err(RecomposeError::OutdegreeMismatch { .. })));

        let mut parts = decompose(&m("(())@1"));
        parts.remainder = t("(())");
        assert!(matches!(recompose(&parts), Err(RecomposeError::LastVertexNotAtLevel { .. })));
    }

    #[test]
    fn assemble_examples() {
        assert_eq!(assemble_path(&decompose(&m("(())@1"))).to_string(), "UDDDUD");
        assert_eq!(assemble_path(&decompose(&m("()@0"))).to_string(), "UDD");
        assert_eq!(assemble_path(&decompose(&m("()@1"))).to_string(), "DDUD");
    }

    #[test]
    fn phi_map_hand_traces() {
        let q = phi_map(&m("()@1"), 0, 1).unwrap();
        assert_eq!(q.to_string(), "DD");
        assert_eq!((q.start(), q.end()), ((0, 0), (2, -2)));

        assert_eq!(phi_map(&m("()@0"), 0, 0).unwrap().to_string(), "UD");
        assert_eq!(phi_map(&m("()@1"), 0, 0).unwrap().to_string(), "DU");

        let q = phi_map(&m("(())@1"), 1, 1).unwrap();
        assert_eq!(q.to_string(), "DDD@(1,1)");
        assert_eq!((q.start(), q.end()), ((1, 1), (4, -2)));
        assert_eq!(PathSet::new(2, 1, 1).size(), BigUint::from(1u32));
    }

    #[test]
    fn phi_map_rejects_out_of_domain() {
        let err = phi_map(&m("()@1"), 1, 1).unwrap_err();
        assert!(matches!(err, PhiMapError::NotInDomain { .. }));
        let err = phi_map(&m("()@0"), 0, 1).unwrap_err();
        assert!(matches!(err, PhiMapError::NotInDomain { .. }));
    }

    #[test]
    fn phi_map_inv_hand_traces() {
        let q: LatticePath = "DD".parse().unwrap();
        assert_eq!(phi_map_inv(&q, 1, 0, 1).unwrap(), m("()@1"));
        let q: LatticePath = "DDD@(1,1)".parse().unwrap();
        assert_eq!(phi_map_inv(&q, 2, 1, 1).unwrap(), m("(())@1"));
    }

    #[test]
    fn phi_map_inv_rejects_outsiders() {
        let q: LatticePath = "UD".parse().unwrap();
        assert!(matches!(phi_map_inv(&q, 1, 1, 1), Err(PhiMapError::PathOutsideSet { .. })));
        let q: LatticePath = "DD@(1,1)".parse().unwrap();
        assert!(matches!(phi_map_inv(&q, 1, 0, 1), Err(PhiMapError::PathOutsideSet { .. })));
    }

    #[test]
    fn path_set_sizes() {
        assert_eq!(PathSet::new(3, 1, 1).size(), BigUint::from(5u32));
        assert_eq!(PathSet::new(1, 1, 1).size(), BigUint::from(0u32));
        assert_eq!(PathSet::new(3, 0, 0).size(), BigUint::from(20u32));
    }

    #[test]
    fn round_trips_exhaustive_small() {
        for n in 1..=5u32 {
            for tree in crate::tree::enumerate_trees(n) {
                let stats = tree.all_stats();
                for (v, st) in stats.iter().enumerate() {
                    let marked = MarkedTree::new(tree.clone(), v).unwrap();
                    for k in 0..=st.outdegree {
                        for l in 0..=st.level {
                            let q = phi_map(&marked, k, l).unwrap();
                            assert_eq!(phi_map_inv(&q, n, k, l).unwrap(), marked);
                        }
                    }
                }
            }
        }
    }
}
