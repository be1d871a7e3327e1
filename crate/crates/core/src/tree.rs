//! Static rooted trees built from parent arrays, plus the line-based tree file format.
//!
//! Nodes are dense ids in `0..n`. Children lists are kept in ascending id order so
//! every traversal over a [`RootedTree`] is deterministic.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

/// Dense node identifier in `0..n`.
pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("tree has no nodes")]
    Empty,
    #[error("expected exactly one root, found {0}")]
    RootCount(usize),
    #[error("node {node} has out-of-range parent {parent}")]
    ParentOutOfRange { node: NodeId, parent: i64 },
    #[error("parent links contain a cycle through node {0}")]
    Cycle(NodeId),
}

/// Immutable rooted tree with levels and children adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    parent: Vec<Option<NodeId>>,
    children: Vec<Vec<NodeId>>,
    level: Vec<usize>,
    root: NodeId,
}

impl RootedTree {
    /// Builds a tree from a parent list in which `None` marks the root.
    pub fn from_parents(parent: Vec<Option<NodeId>>) -> Result<Self, TreeError> {
        let n = parent.len();
        if n == 0 {
            return Err(TreeError::Empty);
        }
        let roots: Vec<NodeId> = (0..n).filter(|&x| parent[x].is_none()).collect();
        if roots.len() != 1 {
            return Err(TreeError::RootCount(roots.len()));
        }
        let root = roots[0];
        let mut children = vec![Vec::new(); n];
        for (x, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(TreeError::ParentOutOfRange {
                        node: x,
                        parent: p as i64,
                    });
                }
                children[p].push(x);
            }
        }

        // Every non-root node has exactly one parent, so any node unreachable
        // from the root sits on (or hangs off) a cycle.
        let mut level = vec![usize::MAX; n];
        level[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &c in &children[x] {
                level[c] = level[x] + 1;
                queue.push_back(c);
            }
        }
        if let Some(bad) = level.iter().position(|&l| l == usize::MAX) {
            return Err(TreeError::Cycle(bad));
        }
        Ok(Self {
            parent,
            children,
            level,
            root,
        })
    }

    /// Builds a tree from a signed parent list in which any negative entry marks the root.
    pub fn from_signed_parents(parent: &[i64]) -> Result<Self, TreeError> {
        let n = parent.len() as i64;
        let mut out = Vec::with_capacity(parent.len());
        for (x, &p) in parent.iter().enumerate() {
            if p < 0 {
                out.push(None);
            } else if p >= n {
                return Err(TreeError::ParentOutOfRange { node: x, parent: p });
            } else {
                out.push(Some(p as NodeId));
            }
        }
        Self::from_parents(out)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    #[inline]
    pub fn parent(&self, x: NodeId) -> Option<NodeId> {
        self.parent[x]
    }

    #[inline]
    pub fn level(&self, x: NodeId) -> usize {
        self.level[x]
    }

    #[inline]
    pub fn children(&self, x: NodeId) -> &[NodeId] {
        &self.children[x]
    }

    pub fn parents(&self) -> &[Option<NodeId>] {
        &self.parent
    }

    pub fn levels(&self) -> &[usize] {
        &self.level
    }

    /// Node ids in breadth-first order from the root.
    pub fn bfs_order(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.len());
        order.push(self.root);
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            order.extend_from_slice(&self.children[x]);
        }
        order
    }
}

/// Lowest common ancestor by lifting the deeper node one parent at a time.
pub fn naive_lca(t: &RootedTree, mut i: NodeId, mut j: NodeId) -> NodeId {
    while t.level(i) > t.level(j) {
        i = t.parent(i).unwrap();
    }
    while t.level(j) > t.level(i) {
        j = t.parent(j).unwrap();
    }
    while i != j {
        i = t.parent(i).unwrap();
        j = t.parent(j).unwrap();
    }
    i
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, msg: impl Into<String>) -> Self {
        Self {
            line,
            msg: msg.into(),
        }
    }
}

/// Contents of a tree file: the shape plus optional per-node values and colors.
///
/// ```text
/// N
/// p_0 p_1 ... p_{N-1}      (-1 for the root)
/// V v_0 ... v_{N-1}        (optional)
/// C c_0 ... c_{N-1}        (optional)
/// ```
///
/// Missing value or color lines default to all zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeFile {
    pub tree: RootedTree,
    pub values: Vec<i64>,
    pub colors: Vec<i64>,
}

impl TreeFile {
    pub fn new(tree: RootedTree) -> Self {
        let n = tree.len();
        Self {
            tree,
            values: vec![0; n],
            colors: vec![0; n],
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let (ln, first) = lines
            .next()
            .ok_or_else(|| ParseError::new(1, "missing node count"))?;
        let n: usize = first
            .parse()
            .map_err(|_| ParseError::new(ln, format!("bad node count {first:?}")))?;

        let (ln, second) = lines
            .next()
            .ok_or_else(|| ParseError::new(ln + 1, "missing parent list"))?;
        let parents = parse_ints(ln, second.split_whitespace(), n)?;
        let tree = RootedTree::from_signed_parents(&parents)
            .map_err(|e| ParseError::new(ln, e.to_string()))?;

        let mut file = TreeFile::new(tree);
        let mut seen_v = false;
        let mut seen_c = false;
        for (ln, line) in lines {
            let mut words = line.split_whitespace();
            match words.next() {
                Some("V") if !seen_v => {
                    file.values = parse_ints(ln, words, n)?;
                    seen_v = true;
                }
                Some("C") if !seen_c => {
                    file.colors = parse_ints(ln, words, n)?;
                    seen_c = true;
                }
                Some(tag) => {
                    return Err(ParseError::new(ln, format!("unexpected line tag {tag:?}")))
                }
                None => unreachable!(),
            }
        }
        Ok(file)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let n = self.tree.len();
        writeln!(out, "{n}").unwrap();
        let parents: Vec<String> = self
            .tree
            .parents()
            .iter()
            .map(|p| p.map_or("-1".to_string(), |p| p.to_string()))
            .collect();
        writeln!(out, "{}", parents.join(" ")).unwrap();
        if self.values.iter().any(|&v| v != 0) {
            writeln!(out, "V {}", join(&self.values)).unwrap();
        }
        if self.colors.iter().any(|&c| c != 0) {
            writeln!(out, "C {}", join(&self.colors)).unwrap();
        }
        out
    }
}

fn join(xs: &[i64]) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

fn parse_ints<'a>(
    line: usize,
    words: impl Iterator<Item = &'a str>,
    expected: usize,
) -> Result<Vec<i64>, ParseError> {
    let out = words
        .map(|w| {
            w.parse::<i64>()
                .map_err(|_| ParseError::new(line, format!("bad integer {w:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if out.len() != expected {
        return Err(ParseError::new(
            line,
            format!("expected {expected} entries, found {}", out.len()),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(p: &[i64]) -> RootedTree {
        RootedTree::from_signed_parents(p).unwrap()
    }

    #[test]
    fn single_node() {
        let t = tree(&[-1]);
        assert_eq!(t.len(), 1);
        assert_eq!(t.level(0), 0);
        assert_eq!(t.root(), 0);
    }

    #[test]
    fn chain_levels() {
        let t = tree(&[-1, 0, 1, 2, 3, 4]);
        for i in 0..6 {
            assert_eq!(t.level(i), i);
        }
    }

    #[test]
    fn branching_levels_and_children() {
        let t = tree(&[-1, 0, 1, 1, 2, 3]);
        assert_eq!(t.levels(), &[0, 1, 2, 2, 3, 3]);
        assert_eq!(t.children(1), &[2, 3]);
        assert_eq!(t.children(0), &[1]);
        assert!(t.children(4).is_empty());
    }

    #[test]
    fn children_sorted_even_for_unsorted_input() {
        let t = tree(&[3, 3, 3, -1, 0]);
        assert_eq!(t.root(), 3);
        assert_eq!(t.children(3), &[0, 1, 2]);
        assert_eq!(t.level(4), 2);
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(RootedTree::from_parents(vec![]), Err(TreeError::Empty));
        assert_eq!(
            RootedTree::from_signed_parents(&[0, 0]),
            Err(TreeError::RootCount(0))
        );
        assert_eq!(
            RootedTree::from_signed_parents(&[-1, -1]),
            Err(TreeError::RootCount(2))
        );
        assert!(matches!(
            RootedTree::from_signed_parents(&[-1, 7]),
            Err(TreeError::ParentOutOfRange { node: 1, parent: 7 })
        ));
        // 1 -> 2 -> 1 is disconnected from root 0
        assert!(matches!(
            RootedTree::from_signed_parents(&[-1, 2, 1]),
            Err(TreeError::Cycle(_))
        ));
        assert!(matches!(
            RootedTree::from_signed_parents(&[-1, 1]),
            Err(TreeError::Cycle(1))
        ));
    }

    #[test]
    fn naive_lca_examples() {
        let chain = tree(&[-1, 0, 1, 2, 3, 4]);
        assert_eq!(naive_lca(&chain, 5, 2), 2);
        let branching = tree(&[-1, 0, 1, 1, 2, 3]);
        assert_eq!(naive_lca(&branching, 4, 5), 1);
        for x in 0..6 {
            assert_eq!(naive_lca(&branching, x, x), x);
        }
    }

    #[test]
    fn tree_file_roundtrip() {
        let text = "6\n-1 0 1 1 2 3\nV 0 1 2 3 4 5\nC 0 1 0 1 0 1\n";
        let f = TreeFile::parse(text).unwrap();
        assert_eq!(f.values, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(f.colors, vec![0, 1, 0, 1, 0, 1]);
        assert_eq!(f.to_text(), text);
    }

    #[test]
    fn tree_file_errors_carry_line_numbers() {
        let err = TreeFile::parse("3\n-1 0\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = TreeFile::parse("2\n-1 0\nV 1 x\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = TreeFile::parse("2\n-1 0\nQ 1 2\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = TreeFile::parse("two\n").unwrap_err();
        assert_eq!(err.line, 1);
    }
}
