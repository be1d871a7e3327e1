//! O(h + n/h) structures for rooted trees and lists.
//!
//! * [`decomp`]: the compressed super-node tree of a rooted tree;
//! * [`path`]: path aggregate queries and lazy path updates on top of it;
//! * [`color`]: path recoloring with per-group color-identifier forests;
//! * [`ancestor`]: counting ancestor/descendant color pairs;
//! * [`bst`]: an unbalanced BST kept shallow by global rebuilding;
//! * [`hlist`]: doubly linked lists with distance-`h` skip links.
//!
//! Every structure counts elementary steps (link dereferences, hash lookups,
//! identifier-chain hops) so the asymptotic bounds can be checked as numbers.
//! [`oracle`] holds the brute-force references used to test them.

pub mod aggregate;
pub mod ancestor;
pub mod bst;
pub mod color;
pub mod decomp;
pub mod gen;
pub mod hlist;
pub mod oracle;
pub mod path;
pub mod tree;

pub use aggregate::{Aggregator, MaxAssign, SumAdd};
pub use decomp::{default_h, DecompError, Decomposition};
pub use path::{find_lca, PathStore};
pub use tree::{naive_lca, NodeId, ParseError, RootedTree, TreeError, TreeFile};
