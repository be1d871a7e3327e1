//! Path queries and updates over a [`Decomposition`].
//!
//! Each group is a block with a cached aggregate of its stored values and a pending
//! lazy update. A path `i -> j` is split at the LCA; each half climbs toward it,
//! touching whole groups in one step when the group lies entirely on the path and
//! single nodes otherwise. The LCA itself is handled last as a point operation.
//!
//! Point updates that land inside a group are batched: after the path walk every
//! touched group gets one pass that pushes its pending tag into the stored values,
//! applies the queued point updates and recomputes the cached aggregate.

use crate::aggregate::Aggregator;
use crate::decomp::Decomposition;
use crate::tree::NodeId;

/// One unit of work on a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathPiece {
    /// The whole group of this super-node lies on the path.
    FullGroup(NodeId),
    /// A single node inside the group of `group`.
    GroupNode { group: NodeId, node: NodeId },
    /// A node that belongs to no group.
    Ungrouped(NodeId),
}

/// Lowest common ancestor using super-parent jumps where possible.
pub fn find_lca(d: &Decomposition, mut i: NodeId, mut j: NodeId, steps: &mut u64) -> NodeId {
    let t = d.tree();
    let root = t.root();
    let parent = |x: NodeId| t.parent(x).expect("non-root");
    let super_parent = |x: NodeId| d.super_parent(x).expect("non-root super-node");
    while i != j {
        *steps += 1;
        match (d.is_super(i), d.is_super(j)) {
            (true, true) => {
                if t.level(i) >= t.level(j) {
                    i = super_parent(i);
                } else {
                    j = super_parent(j);
                }
            }
            (false, false) => {
                if t.level(i) >= t.level(j) {
                    i = parent(i);
                } else {
                    j = parent(j);
                }
            }
            (true, false) => {
                if d.group_of(j) == Some(i) {
                    i = parent(i);
                } else if i != root && t.level(super_parent(i)) >= t.level(j) {
                    i = super_parent(i);
                } else {
                    j = parent(j);
                }
            }
            (false, true) => {
                if d.group_of(i) == Some(j) {
                    j = parent(j);
                } else if j != root && t.level(super_parent(j)) >= t.level(i) {
                    j = super_parent(j);
                } else {
                    i = parent(i);
                }
            }
        }
    }
    i
}

fn classify(d: &Decomposition, x: NodeId) -> PathPiece {
    match d.group_of(x) {
        Some(g) => PathPiece::GroupNode { group: g, node: x },
        None => PathPiece::Ungrouped(x),
    }
}

/// Climbs from `i` to `lca` (exclusive), reporting each piece.
fn climb(
    d: &Decomposition,
    mut i: NodeId,
    lca: NodeId,
    steps: &mut u64,
    f: &mut impl FnMut(PathPiece),
) {
    let t = d.tree();
    let lca_level = t.level(lca);
    while i != lca {
        *steps += 1;
        if d.is_super(i) {
            let sp = d.super_parent(i).expect("lca lies above i");
            if t.level(sp) >= lca_level {
                f(PathPiece::FullGroup(i));
                i = sp;
                continue;
            }
        }
        f(classify(d, i));
        i = t.parent(i).expect("lca lies above i");
    }
}

/// Decomposes the path `i -> j` into pieces. Every node of the path is covered by
/// exactly one piece; the LCA is reported last. Returns the LCA.
pub fn walk_path(
    d: &Decomposition,
    i: NodeId,
    j: NodeId,
    steps: &mut u64,
    mut f: impl FnMut(PathPiece),
) -> NodeId {
    let lca = find_lca(d, i, j, steps);
    climb(d, i, lca, steps, &mut f);
    climb(d, j, lca, steps, &mut f);
    *steps += 1;
    f(classify(d, lca));
    lca
}

/// Values on a tree with per-group aggregates and lazy updates.
#[derive(Debug, Clone)]
pub struct PathStore<A: Aggregator> {
    d: Decomposition,
    values: Vec<A::Value>,
    // indexed by super-node id; aggregate of the *stored* values of the group
    cached: Vec<A::Agg>,
    pending: Vec<A::Update>,
    marked: Vec<bool>,
    touched: Vec<NodeId>,
    steps: u64,
}

impl<A: Aggregator> PathStore<A> {
    pub fn new(d: Decomposition, values: Vec<A::Value>) -> Self {
        let n = d.tree().len();
        assert_eq!(values.len(), n, "one value per node");
        let mut cached = vec![A::agg_identity(); n];
        for &s in d.supers() {
            cached[s] = A::fold(d.group_seq(s).iter().map(|&x| &values[x]));
        }
        Self {
            d,
            values,
            cached,
            pending: vec![A::upd_identity(); n],
            marked: vec![false; n],
            touched: Vec::new(),
            steps: 0,
        }
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.d
    }

    /// Cumulative elementary steps over every operation so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn find_lca(&mut self, i: NodeId, j: NodeId) -> NodeId {
        find_lca(&self.d, i, j, &mut self.steps)
    }

    pub fn point_query(&mut self, x: NodeId) -> A::Value {
        self.steps += 1;
        match self.d.group_of(x) {
            Some(g) => A::apply_value(&self.pending[g], &self.values[x]),
            None => self.values[x].clone(),
        }
    }

    pub fn point_update(&mut self, x: NodeId, u: &A::Update) {
        self.steps += 1;
        match self.d.group_of(x) {
            Some(g) => {
                self.marked[x] = true;
                self.touched.push(g);
                self.settle(u);
            }
            None => self.values[x] = A::apply_value(u, &self.values[x]),
        }
    }

    pub fn path_query(&mut self, i: NodeId, j: NodeId) -> A::Agg {
        if i == j {
            let v = self.point_query(i);
            return A::agg_of_value(&v);
        }
        let mut acc = A::agg_identity();
        let (d, values, cached, pending) = (&self.d, &self.values, &self.cached, &self.pending);
        walk_path(d, i, j, &mut self.steps, |piece| {
            let part = match piece {
                PathPiece::FullGroup(g) => {
                    A::apply_agg(&pending[g], &cached[g], d.group_seq(g).len())
                }
                PathPiece::GroupNode { group, node } => {
                    A::agg_of_value(&A::apply_value(&pending[group], &values[node]))
                }
                PathPiece::Ungrouped(x) => A::agg_of_value(&values[x]),
            };
            acc = A::combine(&acc, &part);
        });
        acc
    }

    pub fn path_update(&mut self, i: NodeId, j: NodeId, u: &A::Update) {
        if i == j {
            self.point_update(i, u);
            return;
        }
        let Self {
            d,
            values,
            pending,
            marked,
            touched,
            steps,
            ..
        } = self;
        walk_path(d, i, j, steps, |piece| match piece {
            PathPiece::FullGroup(g) => pending[g] = A::compose(&pending[g], u),
            PathPiece::GroupNode { group, node } => {
                marked[node] = true;
                if touched.last() != Some(&group) {
                    touched.push(group);
                }
            }
            PathPiece::Ungrouped(x) => values[x] = A::apply_value(u, &values[x]),
        });
        self.settle(u);
    }

    /// One pass per touched group: push the pending tag down, apply `u` to marked
    /// nodes, recompute the cached aggregate.
    fn settle(&mut self, u: &A::Update) {
        let mut touched = std::mem::take(&mut self.touched);
        touched.sort_unstable();
        touched.dedup();
        for &g in &touched {
            let tag = std::mem::replace(&mut self.pending[g], A::upd_identity());
            let mut agg = A::agg_identity();
            for &x in self.d.group_seq(g) {
                self.steps += 1;
                let mut v = A::apply_value(&tag, &self.values[x]);
                if std::mem::take(&mut self.marked[x]) {
                    v = A::apply_value(u, &v);
                }
                agg = A::combine(&agg, &A::agg_of_value(&v));
                self.values[x] = v;
            }
            self.cached[g] = agg;
        }
        touched.clear();
        self.touched = touched;
    }

    /// Current value of every node, with pending tags applied.
    pub fn true_values(&self) -> Vec<A::Value> {
        (0..self.values.len())
            .map(|x| match self.d.group_of(x) {
                Some(g) => A::apply_value(&self.pending[g], &self.values[x]),
                None => self.values[x].clone(),
            })
            .collect()
    }

    /// Checks that every cached aggregate matches its group's stored values.
    pub fn audit(&self) -> Result<(), String> {
        for &s in self.d.supers() {
            let expect = A::fold(self.d.group_seq(s).iter().map(|&x| &self.values[x]));
            if expect != self.cached[s] {
                return Err(format!(
                    "group {s}: cached {:?}, recomputed {expect:?}",
                    self.cached[s]
                ));
            }
        }
        if self.marked.iter().any(|&m| m) || !self.touched.is_empty() {
            return Err("batch scratch not cleared".into());
        }
        Ok(())
    }
}
