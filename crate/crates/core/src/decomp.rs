//! Compressed super-node tree.
//!
//! Construction runs in four linear passes:
//!
//! 1. nodes whose level is a multiple of `h` are *special*;
//! 2. the first special node strictly above every special node becomes a super-node
//!    (the root always is one);
//! 3. each non-root initial super-node climbs until it meets a super-node or a node an
//!    earlier climb already visited; a visited meeting point becomes an extra super-node;
//! 4. every super-node climbs to the first super-node above it (its super-parent), and
//!    the nodes on that walk, itself included, form its group.
//!
//! Groups are internally disjoint tree paths of at most `h` nodes. Nodes on no group
//! have a grouped ancestor at most `2h` levels above them.

use thiserror::Error;

use crate::tree::{NodeId, RootedTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("block size h must be at least 1, got {0}")]
    InvalidH(usize),
    #[error("node {node} reached by the groups of both {first} and {second}")]
    DisjointnessViolation {
        node: NodeId,
        first: NodeId,
        second: NodeId,
    },
}

/// Default block size: `ceil(sqrt(n))`, at least 1.
pub fn default_h(n: usize) -> usize {
    let mut h = (n as f64).sqrt() as usize;
    while h * h < n {
        h += 1;
    }
    while h > 1 && (h - 1) * (h - 1) >= n {
        h -= 1;
    }
    h.max(1)
}

pub fn mark_special(t: &RootedTree, h: usize) -> Result<Vec<bool>, DecompError> {
    if h == 0 {
        return Err(DecompError::InvalidH(h));
    }
    Ok(t.levels().iter().map(|&l| l % h == 0).collect())
}

/// Marks the first special node above every non-root special node, plus the root.
pub fn select_initial_supernodes(t: &RootedTree, special: &[bool], steps: &mut u64) -> Vec<bool> {
    let mut isn = vec![false; t.len()];
    isn[t.root()] = true;
    for x in 0..t.len() {
        if !special[x] || x == t.root() {
            continue;
        }
        let mut y = t.parent(x).unwrap();
        *steps += 1;
        while !special[y] {
            y = t.parent(y).unwrap();
            *steps += 1;
        }
        isn[y] = true;
    }
    isn
}

/// Returns `ISN ∪ ESN`, walking from the non-root initial super-nodes in ascending id order.
pub fn add_extra_supernodes(t: &RootedTree, isn: &[bool], steps: &mut u64) -> Vec<bool> {
    let mut is_super = isn.to_vec();
    let mut visited = vec![false; t.len()];
    for (x, &initial) in isn.iter().enumerate() {
        if !initial || x == t.root() {
            continue;
        }
        let mut y = t.parent(x).unwrap();
        *steps += 1;
        while !is_super[y] && !visited[y] {
            visited[y] = true;
            y = t.parent(y).unwrap();
            *steps += 1;
        }
        if !is_super[y] {
            is_super[y] = true;
        }
    }
    is_super
}

/// The finished decomposition. Owns the tree it was built on.
#[derive(Debug, Clone)]
pub struct Decomposition {
    tree: RootedTree,
    h: usize,
    is_special: Vec<bool>,
    is_super: Vec<bool>,
    super_parent: Vec<Option<NodeId>>,
    group_of: Vec<Option<NodeId>>,
    pos_in_group: Vec<usize>,
    group_seq: Vec<Vec<NodeId>>,
    super_children: Vec<Vec<NodeId>>,
    supers: Vec<NodeId>,
    post_order: Vec<NodeId>,
    isn_count: usize,
    esn_count: usize,
    build_steps: u64,
}

/// Assigns super-parents and groups. `special` and `isn` are only recorded for reporting.
pub fn assign_super_parents(
    t: RootedTree,
    h: usize,
    special: Vec<bool>,
    isn: &[bool],
    super_flags: Vec<bool>,
    steps: &mut u64,
) -> Result<Decomposition, DecompError> {
    let n = t.len();
    let root = t.root();
    let mut super_parent = vec![None; n];
    let mut group_of: Vec<Option<NodeId>> = vec![None; n];
    let mut pos_in_group = vec![usize::MAX; n];
    let mut group_seq = vec![Vec::new(); n];
    let mut super_children = vec![Vec::new(); n];

    let supers: Vec<NodeId> = (0..n).filter(|&x| super_flags[x]).collect();
    for &x in &supers {
        let mut seq = vec![x];
        group_of[x] = Some(x);
        pos_in_group[x] = 0;
        if x != root {
            let mut y = t.parent(x).unwrap();
            *steps += 1;
            while !super_flags[y] {
                if let Some(first) = group_of[y] {
                    return Err(DecompError::DisjointnessViolation {
                        node: y,
                        first,
                        second: x,
                    });
                }
                group_of[y] = Some(x);
                pos_in_group[y] = seq.len();
                seq.push(y);
                y = t.parent(y).unwrap();
                *steps += 1;
            }
            super_parent[x] = Some(y);
            super_children[y].push(x);
        }
        group_seq[x] = seq;
    }

    let mut post_order = Vec::with_capacity(supers.len());
    let mut stack = vec![(root, false)];
    while let Some((x, expanded)) = stack.pop() {
        if expanded {
            post_order.push(x);
        } else {
            stack.push((x, true));
            stack.extend(super_children[x].iter().rev().map(|&c| (c, false)));
        }
    }

    let isn_count = isn.iter().filter(|&&b| b).count();
    Ok(Decomposition {
        esn_count: supers.len() - isn_count,
        isn_count,
        tree: t,
        h,
        is_special: special,
        is_super: super_flags,
        super_parent,
        group_of,
        pos_in_group,
        group_seq,
        super_children,
        supers,
        post_order,
        build_steps: *steps,
    })
}

impl Decomposition {
    pub fn build(t: RootedTree, h: usize) -> Result<Self, DecompError> {
        let special = mark_special(&t, h)?;
        let mut steps = t.len() as u64;
        let isn = select_initial_supernodes(&t, &special, &mut steps);
        let flags = add_extra_supernodes(&t, &isn, &mut steps);
        assign_super_parents(t, h, special, &isn, flags, &mut steps)
    }

    /// Builds with `h = ceil(sqrt(n))`.
    pub fn build_default(t: RootedTree) -> Self {
        let h = default_h(t.len());
        Self::build(t, h).expect("default h is positive")
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn h(&self) -> usize {
        self.h
    }

    #[inline]
    pub fn is_special(&self, x: NodeId) -> bool {
        self.is_special[x]
    }

    #[inline]
    pub fn is_super(&self, x: NodeId) -> bool {
        self.is_super[x]
    }

    /// `None` for the root and for nodes that are not super-nodes.
    #[inline]
    pub fn super_parent(&self, x: NodeId) -> Option<NodeId> {
        self.super_parent[x]
    }

    /// The super-node whose group contains `x`, if any.
    #[inline]
    pub fn group_of(&self, x: NodeId) -> Option<NodeId> {
        self.group_of[x]
    }

    /// Position of `x` within its group, counted upward from the super-node.
    #[inline]
    pub fn pos_in_group(&self, x: NodeId) -> Option<usize> {
        self.group_of[x].map(|_| self.pos_in_group[x])
    }

    /// Group of super-node `x`, from `x` upward. Empty for non-super nodes.
    #[inline]
    pub fn group_seq(&self, x: NodeId) -> &[NodeId] {
        &self.group_seq[x]
    }

    pub fn super_children(&self, x: NodeId) -> &[NodeId] {
        &self.super_children[x]
    }

    /// Super-nodes in ascending id order.
    pub fn supers(&self) -> &[NodeId] {
        &self.supers
    }

    /// Super-nodes with every super-child before its super-parent; the root is last.
    pub fn supers_post_order(&self) -> &[NodeId] {
        &self.post_order
    }

    pub fn ungrouped(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.tree.len()).filter(|&x| self.group_of[x].is_none())
    }

    pub fn isn_count(&self) -> usize {
        self.isn_count
    }

    pub fn esn_count(&self) -> usize {
        self.esn_count
    }

    pub fn build_steps(&self) -> u64 {
        self.build_steps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(p: &[i64]) -> RootedTree {
        RootedTree::from_signed_parents(p).unwrap()
    }

    fn set(flags: &[bool]) -> Vec<NodeId> {
        (0..flags.len()).filter(|&x| flags[x]).collect()
    }

    #[test]
    fn special_nodes() {
        let chain = tree(&[-1, 0, 1, 2, 3, 4]);
        assert_eq!(set(&mark_special(&chain, 2).unwrap()), vec![0, 2, 4]);
        assert_eq!(
            set(&mark_special(&chain, 1).unwrap()),
            (0..6).collect::<Vec<_>>()
        );
        let branching = tree(&[-1, 0, 1, 1, 2, 3]);
        assert_eq!(set(&mark_special(&branching, 2).unwrap()), vec![0, 2, 3]);
        assert_eq!(mark_special(&chain, 0), Err(DecompError::InvalidH(0)));
    }

    #[test]
    fn initial_supernodes() {
        let mut steps = 0;
        let chain = tree(&[-1, 0, 1, 2, 3, 4]);
        let sp = mark_special(&chain, 2).unwrap();
        assert_eq!(
            set(&select_initial_supernodes(&chain, &sp, &mut steps)),
            vec![0, 2]
        );

        let branching = tree(&[-1, 0, 1, 1, 2, 3]);
        let sp = mark_special(&branching, 2).unwrap();
        assert_eq!(
            set(&select_initial_supernodes(&branching, &sp, &mut steps)),
            vec![0]
        );

        let single = tree(&[-1]);
        let sp = mark_special(&single, 5).unwrap();
        assert_eq!(
            set(&select_initial_supernodes(&single, &sp, &mut steps)),
            vec![0]
        );
    }

    #[test]
    fn extra_supernodes() {
        let mut steps = 0;
        let chain = tree(&[-1, 0, 1, 2, 3, 4]);
        let sp = mark_special(&chain, 2).unwrap();
        let isn = select_initial_supernodes(&chain, &sp, &mut steps);
        assert_eq!(
            set(&add_extra_supernodes(&chain, &isn, &mut steps)),
            vec![0, 2]
        );

        let t = tree(&[-1, 0, 1, 1, 2, 2]);
        let sp = mark_special(&t, 2).unwrap();
        let isn = select_initial_supernodes(&t, &sp, &mut steps);
        assert_eq!(set(&isn), vec![0]);
        assert_eq!(set(&add_extra_supernodes(&t, &isn, &mut steps)), vec![0]);

        let star = tree(&[-1, 0, 0, 0]);
        let d = Decomposition::build(star, 3).unwrap();
        assert_eq!(d.supers(), &[0]);
        assert_eq!(d.esn_count(), 0);
    }

    #[test]
    fn y_shape_without_extra_supernodes() {
        // 0-1-2 then arms 2-3-4-5-6 and 2-7-8-9-10, h = 2.
        // Specials 0, 2, 4, 6, 8, 10; ISN 0, 2, 4, 8; both arm climbs stop at super 2.
        let t = tree(&[-1, 0, 1, 2, 3, 4, 5, 2, 7, 8, 9]);
        let d = Decomposition::build(t, 2).unwrap();
        assert_eq!(d.supers(), &[0, 2, 4, 8]);
        assert_eq!(d.esn_count(), 0);
        assert_eq!(d.group_seq(8), &[8, 7]);
        assert_eq!(d.super_children(2), &[4, 8]);
    }

    #[test]
    fn fork_becomes_extra_supernode() {
        // 0-1 forks into 1-2-3-6-7-8 and 1-4-5-9-10-11, h = 3.
        // Specials 0, 3, 5, 8, 11; ISN 0, 3, 5. The climb from 5 meets node 1,
        // already visited by the climb from 3, so 1 becomes an extra super-node.
        let t = tree(&[-1, 0, 1, 2, 1, 4, 3, 6, 7, 5, 9, 10]);
        let d = Decomposition::build(t, 3).unwrap();
        assert_eq!(d.isn_count(), 3);
        assert_eq!(d.esn_count(), 1);
        assert_eq!(d.supers(), &[0, 1, 3, 5]);
        assert_eq!(d.group_seq(3), &[3, 2]);
        assert_eq!(d.group_seq(5), &[5, 4]);
        assert_eq!(d.group_seq(1), &[1]);
        assert_eq!(d.super_parent(3), Some(1));
        assert_eq!(d.super_parent(1), Some(0));
    }

    #[test]
    fn chain_groups() {
        let d = Decomposition::build(tree(&[-1, 0, 1, 2, 3, 4]), 2).unwrap();
        assert_eq!(d.supers(), &[0, 2]);
        assert_eq!(d.group_seq(2), &[2, 1]);
        assert_eq!(d.group_seq(0), &[0]);
        assert_eq!(d.ungrouped().collect::<Vec<_>>(), vec![3, 4, 5]);
        assert_eq!(d.super_parent(2), Some(0));
        assert_eq!(d.super_parent(0), None);
        assert_eq!(d.super_children(0), &[2]);
        assert_eq!(d.pos_in_group(1), Some(1));
        assert_eq!(d.pos_in_group(4), None);
        assert_eq!(d.supers_post_order(), &[2, 0]);
    }

    #[test]
    fn single_node() {
        let d = Decomposition::build(tree(&[-1]), 4).unwrap();
        assert_eq!(d.group_seq(0), &[0]);
        assert_eq!(d.ungrouped().count(), 0);
    }

    #[test]
    fn degenerate_h_values() {
        let t = tree(&[-1, 0, 1, 1, 2, 3]);
        let d = Decomposition::build(t.clone(), 1).unwrap();
        // h = 1: every node with a child is super; leaves are ungrouped.
        assert_eq!(d.supers(), &[0, 1, 2, 3]);
        let d = Decomposition::build(t, 100).unwrap();
        assert_eq!(d.supers(), &[0]);
        assert_eq!(d.ungrouped().count(), 5);
    }

    #[test]
    fn default_h_is_ceil_sqrt() {
        assert_eq!(default_h(1), 1);
        assert_eq!(default_h(2), 2);
        assert_eq!(default_h(4), 2);
        assert_eq!(default_h(5), 3);
        assert_eq!(default_h(10_000), 100);
        assert_eq!(default_h(10_001), 101);
    }
}
