//! Free trees as canonical level sequences.
//!
//! A rooted tree is written as the depths of its vertices in preorder, with
//! subtrees ordered so the sequence is lexicographically largest. A free
//! tree is represented by rooting it at its center; for a bicentral tree the
//! root is the center whose half (after cutting the central edge) is the
//! larger one, comparing first by size and then lexicographically.
//!
//! [`FreeTrees`] walks these codes in decreasing lexicographic order using
//! the rooted-tree successor rule plus the center test, jumping over runs of
//! rooted trees whose root is not a center. The generator keeps no state
//! beyond the current code, so a walk can restart from any code it emitted.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Full enumeration refuses larger orders.
pub const MAX_ENUMERATION_VERTICES: usize = 40;

/// Largest order a level sequence can describe.
pub const MAX_CODE_VERTICES: usize = 255;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("graph is not a tree")]
    NotATree,
    #[error("{n} vertices is above the enumeration cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("invalid level sequence: {0}")]
    InvalidCode(String),
    #[error("family degree must be at least 2, got {0}")]
    FamilyDegree(usize),
}

/// Canonical level sequence of a free tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct TreeCode(Vec<u8>);

impl TreeCode {
    /// Accepts any well-formed level sequence (root depth 0, every later
    /// depth between 1 and one more than its predecessor). Canonicity is not
    /// checked here; see [`canonical_code`].
    pub fn from_levels(levels: Vec<u8>) -> Result<Self, TreeError> {
        match levels.first() {
            None => return Err(TreeError::InvalidCode("empty".into())),
            Some(&root) if root != 0 => return Err(TreeError::InvalidCode("root depth must be 0".into())),
            _ => {}
        }
        for (i, w) in levels.windows(2).enumerate() {
            if w[1] == 0 || w[1] > w[0] + 1 {
                return Err(TreeError::InvalidCode(format!("depth {} at position {}", w[1], i + 1)));
            }
        }
        Ok(TreeCode(levels))
    }

    pub fn levels(&self) -> &[u8] {
        &self.0
    }

    pub fn into_levels(self) -> Vec<u8> {
        self.0
    }

    pub fn vertex_count(&self) -> usize {
        self.0.len()
    }

    /// Every vertex has degree 1 or at least `d`; decided on the sequence
    /// without building the tree.
    pub fn in_family(&self, d: usize) -> bool {
        family_violation(&self.0, d).is_none()
    }

    /// The tree, with vertex `i` at position `i` of the sequence.
    pub fn to_graph(&self) -> Graph {
        let mut last_at_depth: Vec<usize> = Vec::new();
        let mut edges = Vec::with_capacity(self.0.len().saturating_sub(1));
        for (i, &depth) in self.0.iter().enumerate() {
            let depth = depth as usize;
            last_at_depth.truncate(depth);
            if depth > 0 {
                edges.push((last_at_depth[depth - 1], i));
            }
            last_at_depth.push(i);
        }
        Graph::from_edges(self.0.len(), edges).expect("level sequences describe trees")
    }
}

impl TryFrom<Vec<u8>> for TreeCode {
    type Error = TreeError;

    fn try_from(levels: Vec<u8>) -> Result<Self, Self::Error> {
        TreeCode::from_levels(levels)
    }
}

impl From<TreeCode> for Vec<u8> {
    fn from(code: TreeCode) -> Self {
        code.0
    }
}

impl fmt::Display for TreeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Canonical code of `tree`; equal codes exactly for isomorphic trees.
pub fn canonical_code(tree: &Graph) -> Result<TreeCode, TreeError> {
    if !tree.is_tree() {
        return Err(TreeError::NotATree);
    }
    let n = tree.vertex_count();
    if n > MAX_CODE_VERTICES {
        return Err(TreeError::TooLarge { n, cap: MAX_CODE_VERTICES });
    }
    let ecc = tree.eccentricities().map_err(|_| TreeError::NotATree)?;
    let centers: Vec<usize> = (0..n).filter(|&v| ecc.eccentricity[v] == ecc.radius).collect();
    let root = match centers[..] {
        [c] => c,
        [a, b] => {
            let half_a = rooted_code(tree, a, Some(b), 0);
            let half_b = rooted_code(tree, b, Some(a), 0);
            if compare_halves(&half_b, &half_a) != Ordering::Greater {
                a
            } else {
                b
            }
        }
        _ => unreachable!("a tree has one or two centers"),
    };
    Ok(TreeCode(rooted_code(tree, root, None, 0)))
}

fn compare_halves(a: &[u8], b: &[u8]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Largest level sequence of the subtree at `v` away from `parent`.
fn rooted_code(tree: &Graph, v: usize, parent: Option<usize>, depth: u8) -> Vec<u8> {
    let mut children: Vec<Vec<u8>> = tree
        .neighbors(v)
        .iter()
        .filter(|&&w| Some(w) != parent)
        .map(|&w| rooted_code(tree, w, Some(v), depth + 1))
        .collect();
    children.sort_unstable_by(|a, b| b.cmp(a));
    let mut code = Vec::with_capacity(1 + children.iter().map(Vec::len).sum::<usize>());
    code.push(depth);
    for child in children {
        code.extend(child);
    }
    code
}

/// True iff every vertex of the tree has degree 1 or at least `d`.
pub fn in_family(tree: &Graph, d: usize) -> Result<bool, TreeError> {
    if d < 2 {
        return Err(TreeError::FamilyDegree(d));
    }
    if !tree.is_tree() {
        return Err(TreeError::NotATree);
    }
    Ok((0..tree.vertex_count()).all(|v| tree.degree(v) == 1 || tree.degree(v) >= d))
}

/// Number of vertices of degree at least 2 in a level sequence.
pub fn nonleaf_count(code: &TreeCode) -> usize {
    let levels = code.levels();
    let n = levels.len();
    (0..n)
        .filter(|&i| {
            let children = levels[i + 1..].iter().take_while(|&&l| l > levels[i]).filter(|&&l| l == levels[i] + 1).count();
            children + usize::from(i != 0) >= 2
        })
        .count()
}

/// Stream of the free trees on `n` vertices, one code per isomorphism class,
/// in decreasing lexicographic code order.
#[derive(Debug, Clone)]
pub struct FreeTrees {
    n: usize,
    current: Vec<u8>,
    started: bool,
    finished: bool,
    min_nonleaf_degree: Option<usize>,
    visited: u64,
}

impl FreeTrees {
    pub fn new(n: usize) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::InvalidCode("a tree needs at least one vertex".into()));
        }
        if n > MAX_ENUMERATION_VERTICES {
            return Err(TreeError::TooLarge { n, cap: MAX_ENUMERATION_VERTICES });
        }
        Ok(Self::unchecked(n, None))
    }

    /// Trees on `n` vertices whose non-leaf vertices all have degree at least
    /// `d`. Prefixes that already fix a vertex with degree in `2..d` are
    /// skipped without visiting their completions, which allows orders well
    /// past the full-enumeration cap.
    pub fn family(n: usize, d: usize) -> Result<Self, TreeError> {
        if d < 2 {
            return Err(TreeError::FamilyDegree(d));
        }
        if n == 0 {
            return Err(TreeError::InvalidCode("a tree needs at least one vertex".into()));
        }
        if n > MAX_CODE_VERTICES {
            return Err(TreeError::TooLarge { n, cap: MAX_CODE_VERTICES });
        }
        Ok(Self::unchecked(n, Some(d)))
    }

    fn unchecked(n: usize, min_nonleaf_degree: Option<usize>) -> Self {
        FreeTrees { n, current: Vec::new(), started: false, finished: false, min_nonleaf_degree, visited: 0 }
    }

    /// Continues the walk with the code that follows `code`.
    pub fn resume_after(mut self, code: &TreeCode) -> Result<Self, TreeError> {
        if code.vertex_count() != self.n {
            return Err(TreeError::InvalidCode(format!(
                "cursor has {} vertices, expected {}",
                code.vertex_count(),
                self.n
            )));
        }
        self.current = code.levels().to_vec();
        self.started = true;
        self.finished = false;
        Ok(self)
    }

    /// Candidate sequences examined, including skipped ones.
    pub fn visited(&self) -> u64 {
        self.visited
    }

    fn start_layout(n: usize) -> Vec<u8> {
        match n {
            1 => vec![0],
            2 => vec![0, 1],
            _ => (0..=n / 2).chain(1..n.div_ceil(2)).map(|d| d as u8).collect(),
        }
    }

    /// Moves `seq` to the next free-tree code at or after it.
    fn settle(&mut self, seq: &mut [u8]) -> bool {
        loop {
            self.visited += 1;
            if seq.len() <= 2 {
                return true;
            }
            let second = (2..seq.len()).find(|&i| seq[i] == 1).unwrap_or(seq.len());
            if rooted_at_center(seq, second) {
                return true;
            }
            // Jump past the rooted trees that share this first subtree shape.
            let p = second - 1;
            let old = seq[p];
            if old < 2 {
                if !next_rooted(seq, None) {
                    return false;
                }
                continue;
            }
            if !next_rooted(seq, Some(p)) {
                return false;
            }
            if old > 2 {
                let second = (2..seq.len()).find(|&i| seq[i] == 1).unwrap_or(seq.len());
                let left_height = seq[1..second].iter().max().copied().unwrap_or(1) - 1;
                let n = seq.len();
                let tail = left_height as usize + 1;
                for (slot, depth) in seq[n - tail..].iter_mut().zip(1..) {
                    *slot = depth;
                }
            }
        }
    }
}

/// The center test on the first subtree `seq[1..second]` versus the rest.
fn rooted_at_center(seq: &[u8], second: usize) -> bool {
    let left = &seq[1..second];
    let rest_tail = &seq[second..];
    let left_height = left.iter().max().copied().unwrap_or(1) - 1;
    let rest_height = rest_tail.iter().max().copied().unwrap_or(0);
    match rest_height.cmp(&left_height) {
        Ordering::Less => false,
        Ordering::Greater => true,
        Ordering::Equal => {
            let (left_len, rest_len) = (left.len(), rest_tail.len() + 1);
            match left_len.cmp(&rest_len) {
                Ordering::Greater => false,
                Ordering::Less => true,
                Ordering::Equal => {
                    let left_iter = left.iter().map(|&d| d - 1);
                    let rest_iter = std::iter::once(0).chain(rest_tail.iter().copied());
                    left_iter.cmp(rest_iter) != Ordering::Greater
                }
            }
        }
    }
}

/// Rooted-tree successor in decreasing lexicographic order, applied at
/// position `p` (default: the last depth above 1).
fn next_rooted(seq: &mut [u8], p: Option<usize>) -> bool {
    let p = match p {
        Some(p) => p,
        None => match seq.iter().rposition(|&d| d > 1) {
            Some(p) => p,
            None => return false,
        },
    };
    if p == 0 {
        return false;
    }
    let target = seq[p] - 1;
    let q = (0..p).rev().find(|&i| seq[i] == target).expect("parent depth occurs earlier");
    for i in p..seq.len() {
        seq[i] = seq[i - p + q];
    }
    true
}

/// First position at which a prefix of `seq` pins a vertex to a degree in
/// `2..d`; every sequence sharing that prefix is outside the family.
fn family_violation(seq: &[u8], d: usize) -> Option<usize> {
    // (position, children so far) along the current root path
    let mut open: Vec<(usize, usize)> = Vec::with_capacity(seq.len());
    let bad = |pos: usize, children: usize| {
        let degree = children + usize::from(pos != 0);
        degree == 0 || (2..d).contains(&degree)
    };
    for (t, &depth) in seq.iter().enumerate() {
        while let Some(&(pos, children)) = open.last() {
            if seq[pos] < depth {
                break;
            }
            open.pop();
            if bad(pos, children) {
                return Some(t);
            }
        }
        if let Some(top) = open.last_mut() {
            top.1 += 1;
        }
        open.push((t, 0));
    }
    let last = seq.len() - 1;
    open.into_iter().rev().any(|(pos, children)| bad(pos, children)).then_some(last)
}

impl Iterator for FreeTrees {
    type Item = TreeCode;

    fn next(&mut self) -> Option<TreeCode> {
        if self.finished {
            return None;
        }
        let mut seq = if self.started {
            let mut seq = std::mem::take(&mut self.current);
            if !next_rooted(&mut seq, None) {
                self.finished = true;
                return None;
            }
            seq
        } else {
            self.started = true;
            Self::start_layout(self.n)
        };
        loop {
            if !self.settle(&mut seq) {
                self.finished = true;
                return None;
            }
            let Some(d) = self.min_nonleaf_degree else { break };
            let Some(cut) = family_violation(&seq, d) else { break };
            // Skip every completion of seq[..=cut].
            let advanced = match seq[..=cut].iter().rposition(|&x| x > 1) {
                Some(p) => next_rooted(&mut seq, Some(p)),
                None => false,
            };
            if !advanced {
                self.finished = true;
                return None;
            }
        }
        self.current = seq.clone();
        Some(TreeCode(seq))
    }
}
