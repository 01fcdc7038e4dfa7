//! Rooted ordered trees, their canonical text form, exhaustive enumeration,
//! and per-vertex statistics.
//!
//! A [`Tree`] value is the root vertex of the tree it represents; a tree
//! with `n` edges has `n + 1` vertices. Vertices are addressed by preorder
//! index (root = 0). The canonical text form is the root-implicit balanced
//! parenthesis word: each child subtree contributes `(`, then its own word,
//! then `)`. The single-vertex tree serializes to the empty word.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;

use crate::counts;

/// An ordered rooted tree. Child order is significant and preserved by
/// every operation in this crate.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Tree {
    /// Child subtrees in left-to-right order.
    pub children: Vec<Tree>,
}

/// Statistics of one vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VertexStats {
    /// Edges on the path from the root (root = 0).
    pub level: u32,
    /// Incident edges: outdegree, plus the parent edge for non-root vertices.
    pub degree: u32,
    /// Number of children.
    pub outdegree: u32,
    /// Siblings strictly to the left.
    pub elder_siblings: u32,
    /// Leftmost among its siblings. The root is not a child and therefore
    /// never a first-child.
    pub is_first_child: bool,
    /// No children.
    pub is_leaf: bool,
}

impl Tree {
    /// The single-vertex tree.
    pub fn leaf() -> Self {
        Tree { children: Vec::new() }
    }

    pub fn from_children(children: Vec<Tree>) -> Self {
        Tree { children }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Number of vertices, root included.
    pub fn vertex_count(&self) -> usize {
        let mut count = 0;
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            count += 1;
            stack.extend(node.children.iter());
        }
        count
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_count() - 1
    }

    /// Canonical balanced-parenthesis word, root implicit.
    pub fn serialize(&self) -> String {
        enum Op<'a> {
            Visit(&'a Tree),
            Close,
        }
        let mut out = String::new();
        let mut stack: Vec<Op> = self.children.iter().rev().map(Op::Visit).collect();
        while let Some(op) = stack.pop() {
            match op {
                Op::Visit(node) => {
                    out.push('(');
                    stack.push(Op::Close);
                    stack.extend(node.children.iter().rev().map(Op::Visit));
                }
                Op::Close => out.push(')'),
            }
        }
        out
    }

    /// Parses a balanced-parenthesis word. Inverse of [`Tree::serialize`].
    pub fn parse(text: &str) -> Result<Self, ParseTreeError> {
        // The sentinel at the bottom of the stack becomes the root.
        let mut stack: Vec<(Tree, usize)> = vec![(Tree::leaf(), 0)];
        for (offset, ch) in text.char_indices() {
            match ch {
                '(' => stack.push((Tree::leaf(), offset)),
                ')' => {
                    let (done, _) = stack.pop().expect("stack holds the root sentinel");
                    match stack.last_mut() {
                        Some((parent, _)) => parent.children.push(done),
                        None => return Err(ParseTreeError::UnmatchedClose { offset }),
                    }
                }
                found => return Err(ParseTreeError::StrayChar { offset, found }),
            }
        }
        if stack.len() > 1 {
            return Err(ParseTreeError::UnclosedOpen { offset: stack[1].1 });
        }
        Ok(stack.pop().expect("root sentinel remains").0)
    }

    /// Statistics of every vertex, in preorder.
    pub fn all_stats(&self) -> Vec<VertexStats> {
        struct Frame<'a> {
            node: &'a Tree,
            level: u32,
            elder_siblings: u32,
            is_first_child: bool,
        }
        let mut out = Vec::new();
        let mut stack = vec![Frame { node: self, level: 0, elder_siblings: 0, is_first_child: false }];
        while let Some(frame) = stack.pop() {
            let outdegree = frame.node.children.len() as u32;
            out.push(VertexStats {
                level: frame.level,
                degree: outdegree + u32::from(frame.level > 0),
                outdegree,
                elder_siblings: frame.elder_siblings,
                is_first_child: frame.is_first_child,
                is_leaf: outdegree == 0,
            });
            for (i, child) in frame.node.children.iter().enumerate().rev() {
                stack.push(Frame {
                    node: child,
                    level: frame.level + 1,
                    elder_siblings: i as u32,
                    is_first_child: i == 0,
                });
            }
        }
        out
    }

    /// Statistics of the vertex with the given preorder index.
    pub fn stats(&self, vertex: usize) -> Result<VertexStats, MarkOutOfRange> {
        let all = self.all_stats();
        let vertex_count = all.len();
        all.get(vertex).copied().ok_or(MarkOutOfRange { mark: vertex, vertex_count })
    }

    /// Child-index path from the root to the vertex with the given preorder
    /// index, or `None` if the index is out of range.
    pub(crate) fn path_to(&self, vertex: usize) -> Option<Vec<usize>> {
        let mut remaining = vertex;
        let mut node = self;
        let mut path = Vec::new();
        'descend: while remaining > 0 {
            remaining -= 1;
            for (i, child) in node.children.iter().enumerate() {
                let size = child.vertex_count();
                if remaining < size {
                    path.push(i);
                    node = child;
                    continue 'descend;
                }
                remaining -= size;
            }
            return None;
        }
        Some(path)
    }

    pub(crate) fn node_at_mut(&mut self, path: &[usize]) -> &mut Tree {
        let mut node = self;
        for &i in path {
            node = &mut node.children[i];
        }
        node
    }

    /// Preorder index of the vertex at a child-index path.
    pub(crate) fn preorder_index(&self, path: &[usize]) -> usize {
        let mut index = 0;
        let mut node = self;
        for &i in path {
            index += 1 + node.children[..i].iter().map(Tree::vertex_count).sum::<usize>();
            node = &node.children[i];
        }
        index
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl FromStr for Tree {
    type Err = ParseTreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tree::parse(s)
    }
}

/// A tree together with one distinguished vertex, addressed by preorder
/// index. Text form: `<parenthesis-word>@<preorder-index>`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MarkedTree {
    tree: Tree,
    mark: usize,
}

impl MarkedTree {
    pub fn new(tree: Tree, mark: usize) -> Result<Self, MarkOutOfRange> {
        let vertex_count = tree.vertex_count();
        if mark >= vertex_count {
            return Err(MarkOutOfRange { mark, vertex_count });
        }
        Ok(MarkedTree { tree, mark })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn mark(&self) -> usize {
        self.mark
    }

    /// Statistics of the marked vertex.
    pub fn mark_stats(&self) -> VertexStats {
        self.tree.stats(self.mark).expect("mark is a valid preorder index")
    }
}

impl fmt::Display for MarkedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.tree, self.mark)
    }
}

impl FromStr for MarkedTree {
    type Err = ParseMarkedTreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let at = s.rfind('@').ok_or(ParseMarkedTreeError::MissingMark)?;
        let tree = Tree::parse(&s[..at]).map_err(ParseMarkedTreeError::Tree)?;
        let mark: usize = s[at + 1..].parse().map_err(|_| ParseMarkedTreeError::InvalidMark)?;
        MarkedTree::new(tree, mark).map_err(ParseMarkedTreeError::OutOfRange)
    }
}

/// Number of vertices summed over every tree with `n` edges:
/// `(n + 1) · Cat_n = C(2n, n)`.
pub fn total_vertex_count(n: u32) -> BigUint {
    counts::binomial(2 * i64::from(n), i64::from(n))
}

/// Iterates over every tree with `n` edges exactly once, in lexicographic
/// order of the serialization with `'(' < ')'`.
pub fn enumerate_trees(n: u32) -> Trees {
    let n = n as usize;
    let mut word = vec![b'('; 2 * n];
    word[n..].fill(b')');
    Trees { word, state: EnumState::Fresh }
}

/// Iterator returned by [`enumerate_trees`].
pub struct Trees {
    word: Vec<u8>,
    state: EnumState,
}

enum EnumState {
    Fresh,
    Mid,
    Done,
}

impl Iterator for Trees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        match self.state {
            EnumState::Done => return None,
            EnumState::Fresh => self.state = EnumState::Mid,
            EnumState::Mid => {
                if !next_balanced(&mut self.word) {
                    self.state = EnumState::Done;
                    return None;
                }
            }
        }
        let text = core::str::from_utf8(&self.word).expect("word is ASCII");
        Some(Tree::parse(text).expect("generated word is balanced"))
    }
}

/// Advances a balanced word to its lexicographic successor in place.
/// Returns `false` when the word is the last one (`()()…()`).
fn next_balanced(word: &mut [u8]) -> bool {
    let n = word.len() / 2;
    let (mut opens, mut closes) = (n, n);
    for i in (0..word.len()).rev() {
        // After the decrement, `opens`/`closes` count the prefix word[..i].
        if word[i] == b'(' {
            opens -= 1;
        } else {
            closes -= 1;
        }
        if word[i] == b'(' && closes < opens {
            word[i] = b')';
            let remaining_opens = n - opens;
            word[i + 1..i + 1 + remaining_opens].fill(b'(');
            word[i + 1 + remaining_opens..].fill(b')');
            return true;
        }
    }
    false
}

/// A preorder index that does not address a vertex of the tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarkOutOfRange {
    pub mark: usize,
    pub vertex_count: usize,
}

impl fmt::Display for MarkOutOfRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mark {} out of range for a tree with {} vertices", self.mark, self.vertex_count)
    }
}

impl core::error::Error for MarkOutOfRange {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseTreeError {
    /// A `)` with no matching `(`.
    UnmatchedClose { offset: usize },
    /// A `(` left open at the end of the word.
    UnclosedOpen { offset: usize },
    /// A character other than `(` and `)`.
    StrayChar { offset: usize, found: char },
}

impl fmt::Display for ParseTreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseTreeError::UnmatchedClose { offset } => {
                write!(f, "unbalanced word: unmatched ')' at offset {offset}")
            }
            ParseTreeError::UnclosedOpen { offset } => {
                write!(f, "unbalanced word: '(' at offset {offset} is never closed")
            }
            ParseTreeError::StrayChar { offset, found } => {
                write!(f, "stray character {found:?} at offset {offset}")
            }
        }
    }
}

impl core::error::Error for ParseTreeError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseMarkedTreeError {
    Tree(ParseTreeError),
    /// No `@<index>` suffix.
    MissingMark,
    /// The text after `@` is not a number.
    InvalidMark,
    OutOfRange(MarkOutOfRange),
}

impl fmt::Display for ParseMarkedTreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseMarkedTreeError::Tree(e) => write!(f, "{e}"),
            ParseMarkedTreeError::MissingMark => f.write_str("missing '@<preorder-index>' suffix"),
            ParseMarkedTreeError::InvalidMark => f.write_str("mark after '@' is not a number"),
            ParseMarkedTreeError::OutOfRange(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ParseMarkedTreeError {}
