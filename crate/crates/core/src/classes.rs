//! The four marked-vertex classes refined by a degree parameter `k` and a
//! level parameter `l`, and the reversible tree surgeries between them.
//!
//! For a fixed tree size `n` and parameters `k, l >= 1`:
//!
//! * `A`: first-children of degree `k` at level `l`,
//! * `B`: non-first-children of degree `k` at level `l - 1`,
//! * `C`: leaves with exactly `k - 1` elder siblings at level `l`,
//! * `D`: non-leaves of outdegree `k` at level `l - 1`.
//!
//! Each of the maps below carries one class bijectively onto `D` (and
//! back); arbitrary pairs compose through `D`. Every map preserves the
//! edge count and recomputes the mark's preorder index in the output tree.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use crate::tree::{MarkedTree, VertexStats};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Class {
    A,
    B,
    C,
    D,
}

impl Class {
    pub const ALL: [Class; 4] = [Class::A, Class::B, Class::C, Class::D];

    pub fn name(self) -> &'static str {
        match self {
            Class::A => "A",
            Class::B => "B",
            Class::C => "C",
            Class::D => "D",
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Class {
    type Err = ParseClassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Class::A),
            "B" | "b" => Ok(Class::B),
            "C" | "c" => Ok(Class::C),
            "D" | "d" => Ok(Class::D),
            _ => Err(ParseClassError),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseClassError;

impl fmt::Display for ParseClassError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("class must be one of A, B, C, D")
    }
}

impl core::error::Error for ParseClassError {}

/// A subset of the four classes.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, Debug)]
pub struct ClassSet(u8);

impl ClassSet {
    pub fn insert(&mut self, class: Class) {
        self.0 |= 1 << class as u8;
    }

    pub fn contains(self, class: Class) -> bool {
        self.0 & (1 << class as u8) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Class> {
        Class::ALL.into_iter().filter(move |c| self.contains(*c))
    }
}

impl FromIterator<Class> for ClassSet {
    fn from_iter<I: IntoIterator<Item = Class>>(iter: I) -> Self {
        let mut set = ClassSet::default();
        for class in iter {
            set.insert(class);
        }
        set
    }
}

/// The classes the marked vertex satisfies for `(k, l)`. Possibly empty,
/// possibly more than one (a vertex is first-child or not, and leaf or
/// not, independently).
pub fn classify(marked: &MarkedTree, k: u32, l: u32) -> ClassSet {
    let mut set = ClassSet::default();
    if k == 0 || l == 0 {
        return set;
    }
    let st = marked.mark_stats();
    if st.is_first_child && st.degree == k && st.level == l {
        set.insert(Class::A);
    }
    if !st.is_first_child && st.degree == k && st.level + 1 == l {
        set.insert(Class::B);
    }
    if st.is_leaf && st.elder_siblings + 1 == k && st.level == l {
        set.insert(Class::C);
    }
    if !st.is_leaf && st.outdegree == k && st.level + 1 == l {
        set.insert(Class::D);
    }
    set
}

/// The marked vertex is not in the stated class for `(k, l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotInClass {
    pub class: Class,
    /// The first violated membership condition.
    pub condition: String,
}

impl NotInClass {
    fn new(class: Class, condition: String) -> Self {
        NotInClass { class, condition }
    }
}

impl fmt::Display for NotInClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not in class {}: {}", self.class, self.condition)
    }
}

impl core::error::Error for NotInClass {}

/// Checks membership and reports the first violated condition by name.
fn require_class(marked: &MarkedTree, class: Class, k: u32, l: u32) -> Result<VertexStats, NotInClass> {
    let fail = |condition: String| Err(NotInClass::new(class, condition));
    if k == 0 || l == 0 {
        return fail(format!("parameters must satisfy k >= 1 and l >= 1, got k={k} l={l}"));
    }
    let st = marked.mark_stats();
    match class {
        Class::A => {
            if !st.is_first_child {
                return fail(String::from("the marked vertex is not a first-child"));
            }
            if st.degree != k {
                return fail(format!("degree is {}, not {k}", st.degree));
            }
            if st.level != l {
                return fail(format!("level is {}, not {l}", st.level));
            }
        }
        Class::B => {
            if st.is_first_child {
                return fail(String::from("the marked vertex is a first-child"));
            }
            if st.degree != k {
                return fail(format!("degree is {}, not {k}", st.degree));
            }
            if st.level + 1 != l {
                return fail(format!("level is {}, not {}", st.level, l - 1));
            }
        }
        Class::C => {
            if !st.is_leaf {
                return fail(String::from("the marked vertex is not a leaf"));
            }
            if st.elder_siblings + 1 != k {
                return fail(format!("elder sibling count is {}, not {}", st.elder_siblings, k - 1));
            }
            if st.level != l {
                return fail(format!("level is {}, not {l}", st.level));
            }
        }
        Class::D => {
            if st.is_leaf {
                return fail(String::from("the marked vertex is a leaf"));
            }
            if st.outdegree != k {
                return fail(format!("outdegree is {}, not {k}", st.outdegree));
            }
            if st.level + 1 != l {
                return fail(format!("level is {}, not {}", st.level, l - 1));
            }
        }
    }
    Ok(st)
}

/// `A -> D`: exchanges the marked first-child's subtree with the block of
/// its right siblings. The former children of `v` become its parent's
/// children to the right of `v`; the former right siblings of `v` become
/// `v`'s children; the mark moves to the parent.
pub fn map_a_to_d(marked: &MarkedTree, k: u32, l: u32) -> Result<MarkedTree, NotInClass> {
    require_class(marked, Class::A, k, l)?;
    let mut tree = marked.tree().clone();
    let path = tree.path_to(marked.mark()).expect("mark is valid");
    // A first-child is not the root, so the path is nonempty and ends at 0.
    let parent_path = &path[..path.len() - 1];
    let parent = tree.node_at_mut(parent_path);
    let mut v = parent.children.remove(0);
    let former_children = core::mem::take(&mut v.children);
    v.children = core::mem::take(&mut parent.children);
    parent.children.reserve(1 + former_children.len());
    parent.children.push(v);
    parent.children.extend(former_children);
    let mark = tree.preorder_index(parent_path);
    Ok(MarkedTree::new(tree, mark).expect("parent index is valid"))
}

/// Inverse of [`map_a_to_d`].
pub fn map_d_to_a(marked: &MarkedTree, k: u32, l: u32) -> Result<MarkedTree, NotInClass> {
    require_class(marked, Class::D, k, l)?;
    let mut tree = marked.tree().clone();
    let path = tree.path_to(marked.mark()).expect("mark is valid");
    let u = tree.node_at_mut(&path);
    let mut v = u.children.remove(0);
    let former_block = core::mem::take(&mut u.children);
    u.children = core::mem::take(&mut v.children);
    v.children = former_block;
    u.children.insert(0, v);
    let mut v_path = path;
    v_path.push(0);
    let mark = tree.preorder_index(&v_path);
    Ok(MarkedTree::new(tree, mark).expect("first-child index is valid"))
}

/// `B -> D`: if the marked vertex is the root, the pair is already in `D`.
/// Otherwise the subtree of its parent's first-child is cut and re-attached
/// as the new first child of the marked vertex.
pub fn map_b_to_d(marked: &MarkedTree, k: u32, l: u32) -> Result<MarkedTree, NotInClass> {
    require_class(marked, Class::B, k, l)?;
    if marked.mark() == 0 {
        return Ok(marked.clone());
    }
    let mut tree = marked.tree().clone();
    let path = tree.path_to(marked.mark()).expect("mark is valid");
    let (&child_index, parent_path) = path.split_last().expect("non-root");
    let parent = tree.node_at_mut(parent_path);
    // The marked vertex is not a first-child, so child_index >= 1.
    let first = parent.children.remove(0);
    parent.children[child_index - 1].children.insert(0, first);
    let mut v_path = parent_path.to_vec();
    v_path.push(child_index - 1);
    let mark = tree.preorder_index(&v_path);
    Ok(MarkedTree::new(tree, mark).expect("shifted index is valid"))
}

/// Inverse of [`map_b_to_d`]: detaches the marked vertex's first child and
/// re-attaches it as the first child of the marked vertex's parent.
pub fn map_d_to_b(marked: &MarkedTree, k: u32, l: u32) -> Result<MarkedTree, NotInClass> {
    require_class(marked, Class::D, k, l)?;
    if marked.mark() == 0 {
        return Ok(marked.clone());
    }
    let mut tree = marked.tree().clone();
    let path = tree.path_to(marked.mark()).expect("mark is valid");
    let (&child_index, parent_path) = path.split_last().expect("non-root");
    let v = tree.node_at_mut(&path);
    let first = v.children.remove(0);
    let parent = tree.node_at_mut(parent_path);
    parent.children.insert(0, first);
    let mut v_path = parent_path.to_vec();
    v_path.push(child_index + 1);
    let mark = tree.preorder_index(&v_path);
    Ok(MarkedTree::new(tree, mark).expect("shifted index is valid"))
}

/// `C -> D`: the block of the parent's children strictly to the right of
/// the marked leaf moves down to become the leaf's children; the mark
/// moves to the parent.
pub fn map_c_to_d(marked: &MarkedTree, k: u32, l: u32) -> Result<MarkedTree, NotInClass> {
    require_class(marked, Class::C, k, l)?;
    let mut tree = marked.tree().clone();
    let path = tree.path_to(marked.mark()).expect("mark is valid");
    // A leaf at level l >= 1 is not the root.
    let (&child_index, parent_path) = path.split_last().expect("non-root");
    let parent = tree.node_at_mut(parent_path);
    let right_block = parent.children.split_off(child_index + 1);
    parent.children[child_index].children = right_block;
    let mark = tree.preorder_index(parent_path);
    Ok(MarkedTree::new(tree, mark).expect("parent index is valid"))
}

/// Inverse of [`map_c_to_d`]: the children of the marked vertex's last
/// child move up to become the marked vertex's children to its right; the
/// mark moves to that last child.
pub fn map_d_to_c(marked: &MarkedTree, k: u32, l: u32) -> Result<MarkedTree, NotInClass> {
    require_class(marked, Class::D, k, l)?;
    let mut tree = marked.tree().clone();
    let path = tree.path_to(marked.mark()).expect("mark is valid");
    let u = tree.node_at_mut(&path);
    let last_index = u.children.len() - 1;
    let lifted = core::mem::take(&mut u.children[last_index].children);
    u.children.extend(lifted);
    let mut v_path = path;
    v_path.push(last_index);
    let mark = tree.preorder_index(&v_path);
    Ok(MarkedTree::new(tree, mark).expect("last-child index is valid"))
}

fn into_d(marked: &MarkedTree, from: Class, k: u32, l: u32) -> Result<MarkedTree, NotInClass> {
    match from {
        Class::A => map_a_to_d(marked, k, l),
        Class::B => map_b_to_d(marked, k, l),
        Class::C => map_c_to_d(marked, k, l),
        Class::D => require_class(marked, Class::D, k, l).map(|_| marked.clone()),
    }
}

fn out_of_d(marked: &MarkedTree, to: Class, k: u32, l: u32) -> Result<MarkedTree, NotInClass> {
    match to {
        Class::A => map_d_to_a(marked, k, l),
        Class::B => map_d_to_b(marked, k, l),
        Class::C => map_d_to_c(marked, k, l),
        Class::D => Ok(marked.clone()),
    }
}

/// Composition of the primitive maps routed through `D`; the identity when
/// `from == to` (membership still checked).
pub fn map_between(
    marked: &MarkedTree,
    from: Class,
    to: Class,
    k: u32,
    l: u32,
) -> Result<MarkedTree, NotInClass> {
    if from == to {
        return require_class(marked, from, k, l).map(|_| marked.clone());
    }
    let mid = into_d(marked, from, k, l)?;
    out_of_d(&mid, to, k, l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> MarkedTree {
        s.parse().unwrap()
    }

    #[test]
    fn classify_examples() {
        let set = classify(&m("((()))@1"), 2, 1);
        assert!(set.contains(Class::A) && !set.contains(Class::B));
        assert_eq!(set.iter().collect::<Vec<_>>(), [Class::A]);

        let set = classify(&m("()()()@0"), 3, 1);
        assert_eq!(set.iter().collect::<Vec<_>>(), [Class::B, Class::D]);

        assert!(classify(&m("()@1"), 1, 2).is_empty());
        assert!(classify(&m("()@1"), 0, 1).is_empty());
    }

    #[test]
    fn a_to_d_examples() {
        assert_eq!(map_a_to_d(&m("((()))@1"), 2, 1).unwrap(), m("()(())@0"));
        assert_eq!(map_a_to_d(&m("()@1"), 1, 1).unwrap(), m("()@0"));
        let err = map_a_to_d(&m("()(())@2"), 2, 1).unwrap_err();
        assert_eq!(err.class, Class::A);
        assert!(err.condition.contains("not a first-child"), "{}", err.condition);
    }

    #[test]
    fn d_to_a_examples() {
        assert_eq!(map_d_to_a(&m("()(())@0"), 2, 1).unwrap(), m("((()))@1"));
        assert_eq!(map_d_to_a(&m("()@0"), 1, 1).unwrap(), m("()@1"));
        // Forced by the exchange of the two blocks.
        assert_eq!(map_d_to_a(&m("()()()@0"), 3, 1).unwrap(), m("(()())@1"));
    }

    #[test]
    fn b_to_d_examples() {
        assert_eq!(map_b_to_d(&m("()()()@0"), 3, 1).unwrap(), m("()()()@0"));
        assert_eq!(map_b_to_d(&m("()(())@2"), 2, 2).unwrap(), m("(()())@1"));
        let err = map_b_to_d(&m("(())@1"), 1, 2).unwrap_err();
        assert!(err.condition.contains("is a first-child"), "{}", err.condition);
    }

    #[test]
    fn d_to_b_examples() {
        assert_eq!(map_d_to_b(&m("(()())@1"), 2, 2).unwrap(), m("()(())@2"));
        assert_eq!(map_d_to_b(&m("()()()@0"), 3, 1).unwrap(), m("()()()@0"));
    }

    #[test]
    fn c_to_d_examples() {
        assert_eq!(map_c_to_d(&m("()()()@3"), 3, 1).unwrap(), m("()()()@0"));
        assert_eq!(map_c_to_d(&m("()()()@2"), 2, 1).unwrap(), m("()(())@0"));
        let err = map_c_to_d(&m("(())@1"), 1, 1).unwrap_err();
        assert!(err.condition.contains("not a leaf"), "{}", err.condition);
    }

    #[test]
    fn d_to_c_examples() {
        assert_eq!(map_d_to_c(&m("()(())@0"), 2, 1).unwrap(), m("()()()@2"));
        assert_eq!(map_d_to_c(&m("()@0"), 1, 1).unwrap(), m("()@1"));
    }

    #[test]
    fn map_between_examples() {
        assert_eq!(map_between(&m("((()))@1"), Class::A, Class::C, 2, 1).unwrap(), m("()()()@2"));
        assert_eq!(map_between(&m("((()))@1"), Class::A, Class::A, 2, 1).unwrap(), m("((()))@1"));
        // B -> A on the marked root routes through the identity B -> D leg.
        assert_eq!(map_between(&m("()()()@0"), Class::B, Class::A, 3, 1).unwrap(), m("(()())@1"));
        assert!(map_between(&m("((()))@1"), Class::B, Class::A, 2, 1).is_err());
    }

    #[test]
    fn round_trips_exhaustive_small() {
        for n in 1..=6u32 {
            for tree in crate::tree::enumerate_trees(n) {
                let stats = tree.all_stats();
                for (v, st) in stats.iter().enumerate() {
                    let marked = MarkedTree::new(tree.clone(), v).unwrap();
                    if st.is_first_child {
                        let (k, l) = (st.degree, st.level);
                        let image = map_a_to_d(&marked, k, l).unwrap();
                        assert!(classify(&image, k, l).contains(Class::D));
                        assert_eq!(image.tree().edge_count(), n as usize);
                        assert_eq!(map_d_to_a(&image, k, l).unwrap(), marked);
                    } else {
                        let (k, l) = (st.degree, st.level + 1);
                        let image = map_b_to_d(&marked, k, l).unwrap();
                        assert!(classify(&image, k, l).contains(Class::D));
                        assert_eq!(image.tree().edge_count(), n as usize);
                        assert_eq!(map_d_to_b(&image, k, l).unwrap(), marked);
                    }
                    if st.is_leaf {
                        let (k, l) = (st.elder_siblings + 1, st.level);
                        let image = map_c_to_d(&marked, k, l).unwrap();
                        assert!(classify(&image, k, l).contains(Class::D));
                        assert_eq!(image.tree().edge_count(), n as usize);
                        assert_eq!(map_d_to_c(&image, k, l).unwrap(), marked);
                    }
                }
            }
        }
    }
}
