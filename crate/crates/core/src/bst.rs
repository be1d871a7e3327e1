//! Unbalanced binary search tree kept shallow by global rebuilding.
//!
//! Inserts and deletes are the textbook unbalanced ones. Each node stores the height
//! of its subtree; whenever the root height exceeds `T(n)` for the current number of
//! live keys `n`, the whole tree is flattened in order and rebuilt perfectly balanced.
//!
//! With [`DeleteMode::Logical`] deleted nodes stay in place with a flag set and are
//! dropped by the next rebuild. Logical mode also rebuilds once fewer than half of
//! the allocated nodes are live.

use std::cell::Cell;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeleteMode {
    #[default]
    Physical,
    Logical,
}

/// Height limit as a function of the number of live keys.
#[derive(Debug, Clone, Copy, Default)]
pub enum Threshold {
    /// `max(ceil(2 * sqrt(n)), 2 * ceil(log2(n + 1)))`
    #[default]
    SqrtLog,
    Fixed(usize),
    Custom(fn(usize) -> usize),
}

impl Threshold {
    pub fn limit(&self, n: usize) -> usize {
        match *self {
            Threshold::SqrtLog => {
                // ceil(2 * sqrt(n)) == ceil(sqrt(4n))
                let four_n = 4 * n;
                let mut k = (four_n as f64).sqrt() as usize;
                while k * k < four_n {
                    k += 1;
                }
                while k > 0 && (k - 1) * (k - 1) >= four_n {
                    k -= 1;
                }
                let log = (n + 1).next_power_of_two().trailing_zeros() as usize;
                k.max(2 * log)
            }
            Threshold::Fixed(h) => h,
            Threshold::Custom(f) => f(n),
        }
    }
}

#[derive(Debug, Clone)]
struct Node<K> {
    key: K,
    left: Option<usize>,
    right: Option<usize>,
    height: i32,
    deleted: bool,
}

#[derive(Debug, Clone)]
pub struct RebuildBst<K> {
    nodes: Vec<Node<K>>,
    free: Vec<usize>,
    root: Option<usize>,
    n_live: usize,
    allocated: usize,
    mode: DeleteMode,
    threshold: Threshold,
    rebuilds: u64,
    steps: Cell<u64>,
}

impl<K: Ord + Clone> Default for RebuildBst<K> {
    fn default() -> Self {
        Self::new(DeleteMode::Physical, Threshold::SqrtLog)
    }
}

impl<K: Ord + Clone> RebuildBst<K> {
    pub fn new(mode: DeleteMode, threshold: Threshold) -> Self {
        Self {
            nodes: Vec::new(),
            free: Vec::new(),
            root: None,
            n_live: 0,
            allocated: 0,
            mode,
            threshold,
            rebuilds: 0,
            steps: Cell::new(0),
        }
    }

    pub fn len(&self) -> usize {
        self.n_live
    }

    pub fn is_empty(&self) -> bool {
        self.n_live == 0
    }

    pub fn mode(&self) -> DeleteMode {
        self.mode
    }

    pub fn threshold(&self) -> Threshold {
        self.threshold
    }

    /// Height of the whole tree; -1 when empty.
    pub fn height(&self) -> i32 {
        self.h(self.root)
    }

    pub fn root_key(&self) -> Option<&K> {
        self.root.map(|r| &self.nodes[r].key)
    }

    pub fn rebuilds(&self) -> u64 {
        self.rebuilds
    }

    pub fn steps(&self) -> u64 {
        self.steps.get()
    }

    /// Nodes currently in the tree, including logically deleted ones.
    pub fn allocated(&self) -> usize {
        self.allocated
    }

    #[inline]
    fn tick(&self) {
        self.steps.set(self.steps.get() + 1);
    }

    #[inline]
    fn h(&self, at: Option<usize>) -> i32 {
        at.map_or(-1, |i| self.nodes[i].height)
    }

    fn fix_height(&mut self, i: usize) {
        let n = &self.nodes[i];
        let h = 1 + self.h(n.left).max(self.h(n.right));
        self.nodes[i].height = h;
    }

    fn alloc(&mut self, key: K) -> usize {
        self.allocated += 1;
        let node = Node {
            key,
            left: None,
            right: None,
            height: 0,
            deleted: false,
        };
        match self.free.pop() {
            Some(i) => {
                self.nodes[i] = node;
                i
            }
            None => {
                self.nodes.push(node);
                self.nodes.len() - 1
            }
        }
    }

    fn release(&mut self, i: usize) {
        self.allocated -= 1;
        self.free.push(i);
    }

    pub fn contains(&self, key: &K) -> bool {
        let mut at = self.root;
        while let Some(i) = at {
            self.tick();
            let n = &self.nodes[i];
            match key.cmp(&n.key) {
                std::cmp::Ordering::Less => at = n.left,
                std::cmp::Ordering::Greater => at = n.right,
                std::cmp::Ordering::Equal => return !n.deleted,
            }
        }
        false
    }

    /// Returns `false` if the key was already present.
    pub fn insert(&mut self, key: K) -> bool {
        let (root, inserted) = self.insert_at(self.root, key);
        self.root = Some(root);
        if inserted {
            self.n_live += 1;
            self.check_rebuild();
        }
        inserted
    }

    fn insert_at(&mut self, at: Option<usize>, key: K) -> (usize, bool) {
        self.tick();
        let Some(i) = at else {
            return (self.alloc(key), true);
        };
        let inserted = match key.cmp(&self.nodes[i].key) {
            std::cmp::Ordering::Less => {
                let (c, ins) = self.insert_at(self.nodes[i].left, key);
                self.nodes[i].left = Some(c);
                ins
            }
            std::cmp::Ordering::Greater => {
                let (c, ins) = self.insert_at(self.nodes[i].right, key);
                self.nodes[i].right = Some(c);
                ins
            }
            std::cmp::Ordering::Equal => {
                let revived = self.nodes[i].deleted;
                self.nodes[i].deleted = false;
                return (i, revived);
            }
        };
        self.fix_height(i);
        (i, inserted)
    }

    /// Returns `false` if the key was absent.
    pub fn delete(&mut self, key: &K) -> bool {
        let removed = match self.mode {
            DeleteMode::Physical => {
                let (root, removed) = self.delete_at(self.root, key);
                self.root = root;
                removed
            }
            DeleteMode::Logical => self.mark_deleted(key),
        };
        if removed {
            self.n_live -= 1;
            self.check_rebuild();
        }
        removed
    }

    fn mark_deleted(&mut self, key: &K) -> bool {
        let mut at = self.root;
        while let Some(i) = at {
            self.tick();
            match key.cmp(&self.nodes[i].key) {
                std::cmp::Ordering::Less => at = self.nodes[i].left,
                std::cmp::Ordering::Greater => at = self.nodes[i].right,
                std::cmp::Ordering::Equal => {
                    let was_live = !self.nodes[i].deleted;
                    self.nodes[i].deleted = true;
                    return was_live;
                }
            }
        }
        false
    }

    fn delete_at(&mut self, at: Option<usize>, key: &K) -> (Option<usize>, bool) {
        self.tick();
        let Some(i) = at else {
            return (None, false);
        };
        match key.cmp(&self.nodes[i].key) {
            std::cmp::Ordering::Less => {
                let (c, removed) = self.delete_at(self.nodes[i].left, key);
                self.nodes[i].left = c;
                self.fix_height(i);
                (Some(i), removed)
            }
            std::cmp::Ordering::Greater => {
                let (c, removed) = self.delete_at(self.nodes[i].right, key);
                self.nodes[i].right = c;
                self.fix_height(i);
                (Some(i), removed)
            }
            std::cmp::Ordering::Equal => {
                let (l, r) = (self.nodes[i].left, self.nodes[i].right);
                match (l, r) {
                    (None, child) | (child, None) => {
                        self.release(i);
                        (child, true)
                    }
                    (Some(_), Some(r)) => {
                        let (new_right, min) = self.take_min(r);
                        self.nodes[i].right = new_right;
                        let key = self.nodes[min].key.clone();
                        self.nodes[i].key = key;
                        self.release(min);
                        self.fix_height(i);
                        (Some(i), true)
                    }
                }
            }
        }
    }

    /// Unlinks the minimum of the subtree at `i`; returns the new subtree root and the
    /// unlinked node.
    fn take_min(&mut self, i: usize) -> (Option<usize>, usize) {
        self.tick();
        match self.nodes[i].left {
            None => (self.nodes[i].right, i),
            Some(l) => {
                let (new_left, min) = self.take_min(l);
                self.nodes[i].left = new_left;
                self.fix_height(i);
                (Some(i), min)
            }
        }
    }

    fn check_rebuild(&mut self) {
        let too_tall = self.n_live > 0 && self.height() > self.threshold.limit(self.n_live) as i32;
        let too_sparse = self.mode == DeleteMode::Logical && 2 * self.n_live < self.allocated;
        if too_tall || too_sparse {
            self.rebuild();
        }
    }

    /// Live keys in increasing order.
    pub fn in_order(&self) -> Vec<K> {
        let mut out = Vec::with_capacity(self.n_live);
        let mut stack = Vec::new();
        let mut at = self.root;
        loop {
            while let Some(i) = at {
                stack.push(i);
                at = self.nodes[i].left;
            }
            let Some(i) = stack.pop() else { break };
            self.tick();
            if !self.nodes[i].deleted {
                out.push(self.nodes[i].key.clone());
            }
            at = self.nodes[i].right;
        }
        out
    }

    /// Rebuilds the tree perfectly balanced from its live keys.
    pub fn rebuild(&mut self) {
        let keys = self.in_order();
        self.nodes.clear();
        self.free.clear();
        self.allocated = 0;
        self.rebuilds += 1;
        self.root = if keys.is_empty() {
            None
        } else {
            Some(self.build_range(&keys, 0, keys.len() - 1))
        };
    }

    fn build_range(&mut self, keys: &[K], i: usize, j: usize) -> usize {
        self.tick();
        let m = (i + j) / 2;
        let r = self.alloc(keys[m].clone());
        if m > i {
            let l = self.build_range(keys, i, m - 1);
            self.nodes[r].left = Some(l);
        }
        if m < j {
            let rr = self.build_range(keys, m + 1, j);
            self.nodes[r].right = Some(rr);
        }
        self.fix_height(r);
        r
    }

    /// Tree shape as nested `(key, left, right)` triples rendered in pre-order, with
    /// `.` for an absent child. Two trees with equal shapes and keys render equally.
    pub fn shape(&self) -> String
    where
        K: std::fmt::Display,
    {
        fn go<K: std::fmt::Display>(t: &RebuildBst<K>, at: Option<usize>, out: &mut String) {
            match at {
                None => out.push('.'),
                Some(i) => {
                    let n = &t.nodes[i];
                    out.push('(');
                    out.push_str(&n.key.to_string());
                    if n.deleted {
                        out.push('*');
                    }
                    out.push(' ');
                    go(t, n.left, out);
                    out.push(' ');
                    go(t, n.right, out);
                    out.push(')');
                }
            }
        }
        let mut out = String::new();
        go(self, self.root, &mut out);
        out
    }

    /// Checks ordering, stored heights, live count and the height limit.
    pub fn audit(&self) -> Result<(), String> {
        fn walk<K: Ord + Clone>(
            t: &RebuildBst<K>,
            at: Option<usize>,
            keys: &mut Vec<K>,
            live: &mut usize,
        ) -> Result<i32, String> {
            let Some(i) = at else { return Ok(-1) };
            let n = &t.nodes[i];
            let hl = walk(t, n.left, keys, live)?;
            keys.push(n.key.clone());
            if !n.deleted {
                *live += 1;
            }
            let hr = walk(t, n.right, keys, live)?;
            let h = 1 + hl.max(hr);
            if h != n.height {
                return Err(format!("node {i}: stored height {}, actual {h}", n.height));
            }
            Ok(h)
        }
        let mut keys = Vec::new();
        let mut live = 0;
        let h = walk(self, self.root, &mut keys, &mut live)?;
        if keys.windows(2).any(|w| w[0] >= w[1]) {
            return Err("in-order keys not strictly increasing".into());
        }
        if live != self.n_live {
            return Err(format!("live count {live}, recorded {}", self.n_live));
        }
        if keys.len() != self.allocated {
            return Err(format!(
                "{} nodes reachable, {} allocated",
                keys.len(),
                self.allocated
            ));
        }
        if self.n_live > 0 && h > self.threshold.limit(self.n_live) as i32 {
            return Err(format!(
                "height {h} exceeds limit {}",
                self.threshold.limit(self.n_live)
            ));
        }
        Ok(())
    }
}
