//! Static index for `Q(a, b)`: the number of pairs `(i, j)` where `i` is a proper
//! ancestor of `j`, `color(i) = a` and `color(j) = b`.
//!
//! Pairs are split by where the descendant sits:
//!
//! * descendant on no group, ancestor below its first super-node ancestor: counted
//!   once into a global pair table while climbing;
//! * both inside one group: counted into the same table by a bottom-up pass over
//!   each group;
//! * everything else: the ancestor lies in some group `g` and the descendant below
//!   `g`'s super-node, which a query resolves by a bottom-up sweep of the compressed
//!   tree using per-group color counts.
//!
//! Building costs O(n·h); a query costs O(number of super-nodes).

use std::collections::HashMap;

use crate::color::Color;
use crate::decomp::Decomposition;

#[derive(Debug, Clone)]
pub struct AncestorColorIndex {
    d: Decomposition,
    pairs: HashMap<(Color, Color), u64>,
    /// per super-node: colors of ungrouped nodes whose first super-node ancestor it is
    cnt_a: Vec<HashMap<Color, u64>>,
    /// per super-node: colors of the nodes of its group
    cnt_b: Vec<HashMap<Color, u64>>,
    /// super-node -> position in `d.supers_post_order()`
    slot: Vec<usize>,
    build_steps: u64,
}

impl AncestorColorIndex {
    pub fn build(d: Decomposition, colors: &[Color]) -> Self {
        let t = d.tree();
        let n = t.len();
        assert_eq!(colors.len(), n, "one color per node");
        let mut steps = 0u64;
        let mut pairs: HashMap<(Color, Color), u64> = HashMap::new();
        let mut cnt_a = vec![HashMap::new(); n];
        let mut cnt_b = vec![HashMap::new(); n];

        for x in d.ungrouped() {
            let cx = colors[x];
            let mut z = t.parent(x).expect("the root is always grouped");
            steps += 1;
            while !d.is_super(z) {
                *pairs.entry((colors[z], cx)).or_insert(0) += 1;
                z = t.parent(z).expect("the root is a super-node");
                steps += 2;
            }
            *cnt_a[z].entry(cx).or_insert(0) += 1;
            steps += 1;
        }

        for &s in d.supers() {
            let running: &mut HashMap<Color, u64> = &mut cnt_b[s];
            for &y in d.group_seq(s) {
                let cy = colors[y];
                for (&c, &k) in running.iter() {
                    *pairs.entry((cy, c)).or_insert(0) += k;
                    steps += 1;
                }
                *running.entry(cy).or_insert(0) += 1;
                steps += 1;
            }
        }

        let mut slot = vec![usize::MAX; n];
        for (k, &s) in d.supers_post_order().iter().enumerate() {
            slot[s] = k;
        }
        Self {
            d,
            pairs,
            cnt_a,
            cnt_b,
            slot,
            build_steps: steps,
        }
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.d
    }

    pub fn build_steps(&self) -> u64 {
        self.build_steps
    }

    /// Number of distinct keys in the global pair table.
    pub fn pair_table_len(&self) -> usize {
        self.pairs.len()
    }

    pub fn query(&self, a: Color, b: Color) -> u64 {
        self.query_with_steps(a, b).0
    }

    /// Returns the count and the number of elementary steps the query took.
    pub fn query_with_steps(&self, a: Color, b: Color) -> (u64, u64) {
        let get = |m: &HashMap<Color, u64>, c: Color| m.get(&c).copied().unwrap_or(0);
        let mut steps = 1u64;
        let mut result = self.pairs.get(&(a, b)).copied().unwrap_or(0);
        let order = self.d.supers_post_order();
        let mut num = vec![0u64; order.len()];
        for (k, &x) in order.iter().enumerate() {
            let mut below = get(&self.cnt_a[x], b);
            steps += 2;
            for &y in self.d.super_children(x) {
                below += num[self.slot[y]] + get(&self.cnt_b[y], b);
                steps += 1;
            }
            num[k] = below;
            result += get(&self.cnt_b[x], a) * below;
        }
        (result, steps)
    }

    /// Checks the count-table invariants against the decomposition.
    pub fn audit(&self) -> Result<(), String> {
        let mut ungrouped_total = 0;
        for &s in self.d.supers() {
            let b: u64 = self.cnt_b[s].values().sum();
            if b != self.d.group_seq(s).len() as u64 {
                return Err(format!(
                    "cntB({s}) sums to {b}, group has {}",
                    self.d.group_seq(s).len()
                ));
            }
            ungrouped_total += self.cnt_a[s].values().sum::<u64>();
        }
        let expect = self.d.ungrouped().count() as u64;
        if ungrouped_total != expect {
            return Err(format!(
                "cntA totals {ungrouped_total}, {expect} ungrouped nodes"
            ));
        }
        Ok(())
    }
}
