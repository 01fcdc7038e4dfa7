//! Lattice paths, Dyck paths, the two tree encodings, and suffix
//! reflection.
//!
//! Paths are stored as a start point plus a word over up-steps `(1, 1)` and
//! down-steps `(1, -1)`; heights are recomputed on demand. Text form: a
//! word over `U` and `D` with an optional `@(x,y)` start-point suffix,
//! default start `(0, 0)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::tree::Tree;

/// One unit step of a lattice path.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Step {
    /// `(1, 1)`
    Up,
    /// `(1, -1)`
    Down,
}

impl Step {
    pub fn flip(self) -> Step {
        match self {
            Step::Up => Step::Down,
            Step::Down => Step::Up,
        }
    }

    pub fn dy(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Down => -1,
        }
    }
}

/// A start point plus a finite word of up/down steps.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct LatticePath {
    start: (i64, i64),
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(start: (i64, i64), steps: Vec<Step>) -> Self {
        LatticePath { start, steps }
    }

    /// A path starting at the origin.
    pub fn from_origin(steps: Vec<Step>) -> Self {
        LatticePath { start: (0, 0), steps }
    }

    pub fn start(&self) -> (i64, i64) {
        self.start
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn up_count(&self) -> usize {
        self.steps.iter().filter(|s| **s == Step::Up).count()
    }

    pub fn down_count(&self) -> usize {
        self.steps.len() - self.up_count()
    }

    pub fn end(&self) -> (i64, i64) {
        let dy: i64 = self.steps.iter().map(|s| s.dy()).sum();
        (self.start.0 + self.steps.len() as i64, self.start.1 + dy)
    }

    /// Heights of all `len + 1` lattice points, the start included.
    pub fn heights(&self) -> impl Iterator<Item = i64> + '_ {
        let mut h = self.start.1;
        core::iter::once(h).chain(self.steps.iter().map(move |s| {
            h += s.dy();
            h
        }))
    }

    pub fn min_height(&self) -> i64 {
        self.heights().min().expect("at least the start point")
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            f.write_str(match step {
                Step::Up => "U",
                Step::Down => "D",
            })?;
        }
        if self.start != (0, 0) {
            write!(f, "@({},{})", self.start.0, self.start.1)?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = ParsePathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (word, start) = match s.find('@') {
            Some(at) => (&s[..at], parse_start(&s[at + 1..]).ok_or(ParsePathError::BadStartPoint)?),
            None => (s, (0, 0)),
        };
        let mut steps = Vec::with_capacity(word.len());
        for (offset, ch) in word.char_indices() {
            match ch {
                'U' => steps.push(Step::Up),
                'D' => steps.push(Step::Down),
                found => return Err(ParsePathError::StrayChar { offset, found }),
            }
        }
        Ok(LatticePath { start, steps })
    }
}

fn parse_start(s: &str) -> Option<(i64, i64)> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let (x, y) = inner.split_once(',')?;
    Some((x.parse().ok()?, y.parse().ok()?))
}

/// A lattice path from the origin whose every prefix height is nonnegative
/// and whose end height is zero.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct DyckPath(LatticePath);

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self, DyckError> {
        let mut h = 0i64;
        for (offset, step) in steps.iter().enumerate() {
            h += step.dy();
            if h < 0 {
                return Err(DyckError::NegativePrefix { offset });
            }
        }
        if h != 0 {
            return Err(DyckError::NonzeroEnd { height: h });
        }
        Ok(DyckPath(LatticePath::from_origin(steps)))
    }

    pub fn empty() -> Self {
        DyckPath(LatticePath::default())
    }

    pub fn as_path(&self) -> &LatticePath {
        &self.0
    }

    pub fn into_path(self) -> LatticePath {
        self.0
    }

    pub fn steps(&self) -> &[Step] {
        self.0.steps()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<LatticePath> for DyckPath {
    type Error = DyckError;

    fn try_from(path: LatticePath) -> Result<Self, DyckError> {
        if path.start() != (0, 0) {
            return Err(DyckError::StartNotOrigin { start: path.start() });
        }
        DyckPath::new(path.into_steps())
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Preorder edge-trace encoding: an up-step when an edge is first entered
/// going away from the root, a down-step when it is left going back. The
/// word equals the tree's serialization with `(` as `U` and `)` as `D`.
pub fn phi(tree: &Tree) -> DyckPath {
    let steps = tree
        .serialize()
        .bytes()
        .map(|b| if b == b'(' { Step::Up } else { Step::Down })
        .collect();
    DyckPath(LatticePath::from_origin(steps))
}

/// Inverse of [`phi`]. Total on Dyck paths: every Dyck word is a balanced
/// parenthesis word.
pub fn phi_inv(path: &DyckPath) -> Tree {
    let mut stack = vec![Tree::leaf()];
    for step in path.steps() {
        match step {
            Step::Up => stack.push(Tree::leaf()),
            Step::Down => {
                let done = stack.pop().expect("Dyck prefix heights are nonnegative");
                stack.last_mut().expect("root sentinel").children.push(done);
            }
        }
    }
    debug_assert_eq!(stack.len(), 1);
    stack.pop().expect("root sentinel")
}

/// Preorder outdegree encoding: for every vertex except the last preorder
/// leaf, its outdegree in up-steps followed by one down-step. The
/// single-vertex tree encodes to the empty path.
pub fn psi(tree: &Tree) -> DyckPath {
    let mut steps = Vec::with_capacity(2 * tree.edge_count());
    let mut stack = vec![tree];
    while let Some(node) = stack.pop() {
        let last = stack.is_empty() && node.is_leaf();
        if !last {
            steps.extend(core::iter::repeat_n(Step::Up, node.children.len()));
            steps.push(Step::Down);
        }
        stack.extend(node.children.iter().rev());
    }
    DyckPath(LatticePath::from_origin(steps))
}

/// Inverse of [`psi`]: repeatedly read a maximal run of `u` up-steps
/// followed by one down-step and give the next preorder vertex outdegree
/// `u`; the final preorder leaf consumes nothing. Total on Dyck paths.
pub fn psi_inv(path: &DyckPath) -> Tree {
    // Outdegrees in preorder: one per down-step, plus 0 for the last leaf.
    let mut outdegrees = Vec::with_capacity(path.len() / 2 + 1);
    let mut ups = 0usize;
    for step in path.steps() {
        match step {
            Step::Up => ups += 1,
            Step::Down => {
                outdegrees.push(ups);
                ups = 0;
            }
        }
    }
    debug_assert_eq!(ups, 0, "a Dyck word ends with a down-step");
    outdegrees.push(0);

    // Preorder reconstruction: each frame is a vertex waiting for children.
    let mut stack: Vec<(Vec<Tree>, usize)> = Vec::new();
    let mut iter = outdegrees.into_iter();
    let first = iter.next().expect("at least the last leaf");
    if first == 0 {
        debug_assert!(iter.next().is_none());
        return Tree::leaf();
    }
    stack.push((Vec::with_capacity(first), first));
    for outdegree in iter {
        if outdegree > 0 {
            stack.push((Vec::with_capacity(outdegree), outdegree));
            continue;
        }
        let mut node = Tree::leaf();
        loop {
            let (children, target) = stack.last_mut().expect("tree completes at the last leaf");
            children.push(node);
            if children.len() < *target {
                break;
            }
            let (children, _) = stack.pop().expect("frame exists");
            node = Tree::from_children(children);
            if stack.is_empty() {
                return node;
            }
        }
    }
    unreachable!("every Dyck word decodes to a single tree")
}

/// φ of an ordered forest: concatenation of the component encodings, left
/// to right. The empty forest encodes to the empty path.
pub fn phi_forest(forest: &[Tree]) -> LatticePath {
    let mut steps = Vec::new();
    for tree in forest {
        steps.extend_from_slice(phi(tree).steps());
    }
    LatticePath::from_origin(steps)
}

/// Keeps the prefix of `path` up to its first point at height `target` and
/// flips every later step. Applying it twice returns the input.
pub fn reflect_suffix(path: &LatticePath, target: i64) -> Result<LatticePath, NoCrossing> {
    let split = match path.heights().position(|h| h == target) {
        Some(split) => split,
        None => {
            // Heights change by one per step, so a level between the
            // extremes cannot be skipped over: missing it means it lies
            // outside the reached range, and the first hit needs no
            // tie-breaking.
            let max = path.heights().max().expect("at least the start point");
            assert!(target < path.min_height() || target > max);
            return Err(NoCrossing { target, start: path.start().1, end: path.end().1 });
        }
    };
    let mut steps = path.steps().to_vec();
    for step in &mut steps[split..] {
        *step = step.flip();
    }
    Ok(LatticePath::new(path.start(), steps))
}

/// The path never reaches the requested height.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoCrossing {
    pub target: i64,
    pub start: i64,
    pub end: i64,
}

impl fmt::Display for NoCrossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "path from height {} to height {} never reaches y = {}",
            self.start, self.end, self.target
        )
    }
}

impl core::error::Error for NoCrossing {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DyckError {
    StartNotOrigin { start: (i64, i64) },
    /// A prefix drops below height zero at this step offset.
    NegativePrefix { offset: usize },
    NonzeroEnd { height: i64 },
}

impl fmt::Display for DyckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DyckError::StartNotOrigin { start } => {
                write!(f, "not a Dyck path: starts at ({},{}) instead of the origin", start.0, start.1)
            }
            DyckError::NegativePrefix { offset } => {
                write!(f, "not a Dyck path: height drops below zero at step {offset}")
            }
            DyckError::NonzeroEnd { height } => {
                write!(f, "not a Dyck path: ends at height {height}")
            }
        }
    }
}

impl core::error::Error for DyckError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParsePathError {
    StrayChar { offset: usize, found: char },
    /// The `@` suffix is not of the form `(x,y)`.
    BadStartPoint,
}

impl fmt::Display for ParsePathError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParsePathError::StrayChar { offset, found } => {
                write!(f, "stray character {found:?} at offset {offset} (expected 'U' or 'D')")
            }
            ParsePathError::BadStartPoint => f.write_str("start point after '@' is not of the form (x,y)"),
        }
    }
}

impl core::error::Error for ParsePathError {}
