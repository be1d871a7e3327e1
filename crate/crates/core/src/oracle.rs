//! Brute-force references. Each one walks the tree or list element by element and
//! shares nothing with the structures it checks beyond [`RootedTree`].

use std::collections::{BTreeSet, HashSet};

use crate::aggregate::Aggregator;
use crate::color::Color;
use crate::decomp::Decomposition;
use crate::hlist::ElemId;
use crate::tree::{naive_lca, NodeId, RootedTree};

/// Nodes on the path `i -> j`, LCA included, each exactly once.
pub fn path_nodes(t: &RootedTree, i: NodeId, j: NodeId) -> Vec<NodeId> {
    let lca = naive_lca(t, i, j);
    let mut out = Vec::new();
    for mut x in [i, j] {
        while x != lca {
            out.push(x);
            x = t.parent(x).unwrap();
        }
    }
    out.push(lca);
    out
}

/// Per-node values updated and folded one node at a time.
#[derive(Debug, Clone)]
pub struct NaivePaths<A: Aggregator> {
    pub tree: RootedTree,
    pub values: Vec<A::Value>,
}

impl<A: Aggregator> NaivePaths<A> {
    pub fn new(tree: RootedTree, values: Vec<A::Value>) -> Self {
        Self { tree, values }
    }

    pub fn lca(&self, i: NodeId, j: NodeId) -> NodeId {
        naive_lca(&self.tree, i, j)
    }

    pub fn path_query(&self, i: NodeId, j: NodeId) -> A::Agg {
        A::fold(
            path_nodes(&self.tree, i, j)
                .iter()
                .map(|&x| &self.values[x]),
        )
    }

    pub fn path_update(&mut self, i: NodeId, j: NodeId, u: &A::Update) {
        for x in path_nodes(&self.tree, i, j) {
            self.values[x] = A::apply_value(u, &self.values[x]);
        }
    }

    pub fn point_query(&self, x: NodeId) -> A::Value {
        self.values[x].clone()
    }

    pub fn point_update(&mut self, x: NodeId, u: &A::Update) {
        self.values[x] = A::apply_value(u, &self.values[x]);
    }
}

/// Per-node colors with literal recolor and per-color sum loops.
#[derive(Debug, Clone)]
pub struct NaiveColors {
    pub tree: RootedTree,
    pub values: Vec<i64>,
    pub colors: Vec<Color>,
}

impl NaiveColors {
    pub fn new(tree: RootedTree, values: Vec<i64>, colors: Vec<Color>) -> Self {
        Self {
            tree,
            values,
            colors,
        }
    }

    pub fn recolor(&mut self, i: NodeId, j: NodeId, a: Color, b: Color) {
        for x in path_nodes(&self.tree, i, j) {
            if self.colors[x] == a {
                self.colors[x] = b;
            }
        }
    }

    pub fn color_fold(&self, i: NodeId, j: NodeId, c: Color) -> i64 {
        path_nodes(&self.tree, i, j)
            .into_iter()
            .filter(|&x| self.colors[x] == c)
            .map(|x| self.values[x])
            .sum()
    }
}

/// Pairs `(i, j)` with `i` a proper ancestor of `j`, `color(i) = a`, `color(j) = b`.
pub fn ancestor_pairs(t: &RootedTree, colors: &[Color], a: Color, b: Color) -> u64 {
    let mut count = 0;
    for j in 0..t.len() {
        if colors[j] != b {
            continue;
        }
        let mut i = t.parent(j);
        while let Some(x) = i {
            if colors[x] == a {
                count += 1;
            }
            i = t.parent(x);
        }
    }
    count
}

/// Reference membership set for the rebuild BST.
pub type SortedSet<K> = BTreeSet<K>;

/// Lists stored as plain arrays of element ids.
#[derive(Debug, Clone, Default)]
pub struct ArrayLists {
    pub lists: Vec<Vec<ElemId>>,
}

impl ArrayLists {
    pub fn push_list(&mut self, ids: Vec<ElemId>) {
        self.lists.push(ids);
    }

    fn locate(&self, x: ElemId) -> (usize, usize) {
        for (li, l) in self.lists.iter().enumerate() {
            if let Some(p) = l.iter().position(|&e| e == x) {
                return (li, p);
            }
        }
        panic!("element {x} is in no list");
    }

    /// Array neighbors of `x`, sorted.
    pub fn neighbors(&self, x: ElemId) -> Vec<ElemId> {
        let (li, p) = self.locate(x);
        let l = &self.lists[li];
        let mut out = Vec::new();
        if p > 0 {
            out.push(l[p - 1]);
        }
        if p + 1 < l.len() {
            out.push(l[p + 1]);
        }
        out.sort();
        out
    }

    /// +1 or -1: the array step from `x` toward its neighbor `toward`.
    fn step_toward(&self, x: ElemId, toward: ElemId) -> (usize, usize, isize) {
        let (li, p) = self.locate(x);
        let l = &self.lists[li];
        if p + 1 < l.len() && l[p + 1] == toward {
            (li, p, 1)
        } else if p > 0 && l[p - 1] == toward {
            (li, p, -1)
        } else {
            panic!("{toward} is not next to {x}");
        }
    }

    /// Element `d` positions from `x` on the side of neighbor `toward`.
    pub fn at_distance(&self, x: ElemId, toward: Option<ElemId>, d: usize) -> Option<ElemId> {
        let Some(t) = toward else {
            return (d == 0).then_some(x);
        };
        let (li, p, s) = self.step_toward(x, t);
        let q = p as isize + s * d as isize;
        let l = &self.lists[li];
        (q >= 0 && (q as usize) < l.len()).then(|| l[q as usize])
    }

    pub fn endpoint(&self, x: ElemId, toward: Option<ElemId>) -> ElemId {
        let Some(t) = toward else { return x };
        let (li, _, s) = self.step_toward(x, t);
        let l = &self.lists[li];
        if s > 0 {
            *l.last().unwrap()
        } else {
            l[0]
        }
    }

    pub fn concatenate(&mut self, x: ElemId, y: ElemId) {
        let (lx, _) = self.locate(x);
        let (ly, _) = self.locate(y);
        assert_ne!(lx, ly);
        let mut a = self.lists[lx].clone();
        let mut b = self.lists[ly].clone();
        if *a.last().unwrap() != x {
            a.reverse();
        }
        if b[0] != y {
            b.reverse();
        }
        assert_eq!(*a.last().unwrap(), x);
        assert_eq!(b[0], y);
        a.extend(b);
        let (hi, lo) = (lx.max(ly), lx.min(ly));
        self.lists.remove(hi);
        self.lists.remove(lo);
        self.lists.push(a);
    }

    pub fn split(&mut self, x: ElemId, y: ElemId) {
        let (li, p, s) = self.step_toward(x, y);
        let mut l = self.lists.remove(li);
        let cut = if s > 0 { p + 1 } else { p };
        let tail = l.split_off(cut);
        self.lists.push(l);
        self.lists.push(tail);
    }
}

/// Checks every structural property of a decomposition from first principles.
pub fn check_decomposition(d: &Decomposition) -> Result<(), String> {
    let t = d.tree();
    let n = t.len();
    let h = d.h();
    let root = t.root();
    if !d.is_super(root) || d.super_parent(root).is_some() {
        return Err("root must be a super-node without super-parent".into());
    }
    if d.group_seq(root) != [root] {
        return Err(format!("root group is {:?}", d.group_seq(root)));
    }

    let supers: Vec<NodeId> = (0..n).filter(|&x| d.is_super(x)).collect();
    if supers != d.supers() {
        return Err("super list disagrees with flags".into());
    }
    let mut owner: Vec<Option<NodeId>> = vec![None; n];
    for &x in &supers {
        let mut expect = vec![x];
        if x != root {
            let mut y = t.parent(x).unwrap();
            while !d.is_super(y) {
                expect.push(y);
                y = t.parent(y).unwrap();
            }
            if d.super_parent(x) != Some(y) {
                return Err(format!(
                    "super_parent({x}) = {:?}, expected {y}",
                    d.super_parent(x)
                ));
            }
            if !d.super_children(y).contains(&x) {
                return Err(format!("{x} missing from super_children({y})"));
            }
        }
        if d.group_seq(x) != expect.as_slice() {
            return Err(format!(
                "group_seq({x}) = {:?}, expected {expect:?}",
                d.group_seq(x)
            ));
        }
        if expect.is_empty() || expect.len() > h {
            return Err(format!("group of {x} has {} nodes, h = {h}", expect.len()));
        }
        for (pos, &y) in expect.iter().enumerate() {
            if let Some(prev) = owner[y] {
                return Err(format!("node {y} in groups of {prev} and {x}"));
            }
            owner[y] = Some(x);
            if d.pos_in_group(y) != Some(pos) {
                return Err(format!(
                    "pos_in_group({y}) = {:?}, expected {pos}",
                    d.pos_in_group(y)
                ));
            }
        }
    }
    let child_total: usize = supers.iter().map(|&x| d.super_children(x).len()).sum();
    if child_total + 1 != supers.len() {
        return Err("super_children lists do not partition the non-root super-nodes".into());
    }

    for z in 0..n {
        if d.group_of(z) != owner[z] {
            return Err(format!(
                "group_of({z}) = {:?}, expected {:?}",
                d.group_of(z),
                owner[z]
            ));
        }
        if owner[z].is_none() {
            let mut y = z;
            let mut up = 0;
            while owner[y].is_none() {
                y = t.parent(y).unwrap();
                up += 1;
            }
            if up > 2 * h {
                return Err(format!(
                    "ungrouped {z}: nearest grouped ancestor {up} levels up"
                ));
            }
        }
    }

    if supers.len() > 2 * (1 + n / h) {
        return Err(format!("{} super-nodes exceeds 2(1 + n/h)", supers.len()));
    }
    if d.isn_count() > 1 + n / h {
        return Err(format!(
            "{} initial super-nodes exceeds 1 + n/h",
            d.isn_count()
        ));
    }
    let set: HashSet<NodeId> = supers.iter().copied().collect();
    for (k, &a) in supers.iter().enumerate() {
        for &b in &supers[k + 1..] {
            let l = naive_lca(t, a, b);
            if !set.contains(&l) {
                return Err(format!("lca({a}, {b}) = {l} is not a super-node"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregate::SumAdd;

    fn tree(p: &[i64]) -> RootedTree {
        RootedTree::from_signed_parents(p).unwrap()
    }

    #[test]
    fn naive_path_folds() {
        let chain = NaivePaths::<SumAdd>::new(tree(&[-1, 0, 1, 2, 3, 4]), (0..6).collect());
        assert_eq!(chain.path_query(5, 1), 15);
        assert_eq!(chain.path_query(3, 3), 3);
        let br = NaivePaths::<SumAdd>::new(tree(&[-1, 0, 1, 1, 2, 3]), (0..6).collect());
        assert_eq!(br.path_query(4, 5), 15);
        let mut p = path_nodes(&br.tree, 4, 5);
        p.sort();
        assert_eq!(p, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn naive_colors() {
        let mut c = NaiveColors::new(
            tree(&[-1, 0, 1, 2, 3, 4]),
            (0..6).collect(),
            (0..6).map(|i| i % 2).collect(),
        );
        assert_eq!(c.color_fold(0, 5, 1), 9);
        c.recolor(0, 5, 1, 0);
        assert_eq!(c.color_fold(0, 5, 0), 15);
    }

    #[test]
    fn naive_ancestor_pairs() {
        let chain = tree(&[-1, 0, 1, 2, 3, 4]);
        let colors = [0, 1, 0, 1, 0, 1];
        assert_eq!(ancestor_pairs(&chain, &colors, 0, 1), 6);
        assert_eq!(ancestor_pairs(&chain, &colors, 5, 1), 0);
        let star = tree(&[-1, 0, 0, 0, 0]);
        assert_eq!(ancestor_pairs(&star, &[1, 2, 2, 2, 2], 1, 2), 4);
    }

    #[test]
    fn sorted_set_reference() {
        let mut s = SortedSet::new();
        assert!(!s.contains(&1));
        s.insert(1);
        assert!(s.contains(&1));
        s.remove(&1);
        assert!(!s.contains(&1));
    }

    #[test]
    fn array_lists() {
        let mut l = ArrayLists::default();
        l.push_list(vec![0, 1, 2, 3, 4]);
        assert_eq!(l.at_distance(1, Some(2), 3), Some(4));
        assert_eq!(l.at_distance(1, Some(2), 4), None);
        assert_eq!(l.endpoint(2, Some(3)), 4);
        assert_eq!(l.endpoint(2, None), 2);
        l.push_list(vec![5, 6]);
        l.concatenate(0, 6);
        assert_eq!(l.lists, vec![vec![4, 3, 2, 1, 0, 6, 5]]);
        l.split(0, 6);
        assert_eq!(l.neighbors(0), vec![1]);
        assert_eq!(l.neighbors(6), vec![5]);
    }

    #[test]
    fn decomposition_checker_accepts_chain() {
        let d = Decomposition::build(tree(&[-1, 0, 1, 2, 3, 4]), 2).unwrap();
        check_decomposition(&d).unwrap();
    }
}
