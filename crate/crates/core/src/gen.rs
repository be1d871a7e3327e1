//! Deterministic tree and label generators for tests, benchmarks and the demo.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tree::{NodeId, RootedTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeKind {
    Chain,
    Star,
    /// A spine of `ceil(n/2)` nodes with one leaf hanging off each spine node.
    Caterpillar,
    /// Node `i` picks its parent uniformly from `0..i`.
    RandomAttach,
}

impl FromStr for TreeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "chain" => Ok(TreeKind::Chain),
            "star" => Ok(TreeKind::Star),
            "caterpillar" => Ok(TreeKind::Caterpillar),
            "random-attach" | "random" => Ok(TreeKind::RandomAttach),
            _ => Err(format!("unknown tree kind {s:?}")),
        }
    }
}

impl fmt::Display for TreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TreeKind::Chain => "chain",
            TreeKind::Star => "star",
            TreeKind::Caterpillar => "caterpillar",
            TreeKind::RandomAttach => "random-attach",
        })
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn parent_list(kind: TreeKind, n: usize, seed: u64) -> Vec<Option<NodeId>> {
    assert!(n >= 1, "a tree needs at least one node");
    match kind {
        TreeKind::Chain => (0..n).map(|i| i.checked_sub(1)).collect(),
        TreeKind::Star => (0..n).map(|i| (i > 0).then_some(0)).collect(),
        TreeKind::Caterpillar => {
            let spine = n.div_ceil(2);
            (0..n)
                .map(|i| match i {
                    0 => None,
                    i if i < spine => Some(i - 1),
                    i => Some(i - spine),
                })
                .collect()
        }
        TreeKind::RandomAttach => {
            let mut r = rng(seed);
            (0..n)
                .map(|i| (i > 0).then(|| r.random_range(0..i)))
                .collect()
        }
    }
}

pub fn generate_tree(kind: TreeKind, n: usize, seed: u64) -> RootedTree {
    RootedTree::from_parents(parent_list(kind, n, seed)).expect("generated parent lists are trees")
}

/// `n` integers drawn uniformly from `lo..hi`.
pub fn random_labels(n: usize, lo: i64, hi: i64, seed: u64) -> Vec<i64> {
    let mut r = rng(seed);
    (0..n).map(|_| r.random_range(lo..hi)).collect()
}
