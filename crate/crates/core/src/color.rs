//! Path recoloring and per-color path sums.
//!
//! Every group keeps a small forest of color identifiers. A node stores the
//! identifier of its color at the time it was last written; the node's current color
//! is found by following identifier parents to a root and reading that root's color.
//! Recoloring a whole group from `a` to `b` re-parents `a`'s root identifier under
//! `b`'s, which changes the color of every `a` node in the group in O(1).
//! Per-group sums by color (`aggv`) answer full-group queries directly.
//!
//! Values are fixed at construction. Nodes on no group keep a plain color field.

use std::collections::HashMap;

use crate::decomp::Decomposition;
use crate::path::{walk_path, PathPiece};
use crate::tree::NodeId;

pub type Color = i64;
type Ident = u32;

#[derive(Debug, Clone, Default)]
struct GroupColors {
    /// live color -> root identifier
    cid: HashMap<Color, Ident>,
    /// identifier -> color it was created for
    revcid: Vec<Color>,
    cidparent: Vec<Option<Ident>>,
    /// color -> sum of values of nodes with that color; zero sums are dropped
    aggv: HashMap<Color, i64>,
}

impl GroupColors {
    fn ident_for(&mut self, c: Color, steps: &mut u64) -> Ident {
        *steps += 1;
        if let Some(&id) = self.cid.get(&c) {
            return id;
        }
        let id = self.revcid.len() as Ident;
        self.revcid.push(c);
        self.cidparent.push(None);
        self.cid.insert(c, id);
        id
    }

    fn add(&mut self, c: Color, delta: i64, steps: &mut u64) {
        *steps += 1;
        let e = self.aggv.entry(c).or_insert(0);
        *e += delta;
        if *e == 0 {
            self.aggv.remove(&c);
        }
    }

    fn root_of(&mut self, start: Ident, steps: &mut u64) -> Ident {
        let mut r = start;
        while let Some(p) = self.cidparent[r as usize] {
            *steps += 1;
            r = p;
        }
        let mut x = start;
        while x != r {
            let next = self.cidparent[x as usize].unwrap();
            self.cidparent[x as usize] = Some(r);
            x = next;
        }
        r
    }
}

#[derive(Debug, Clone)]
pub struct ColorState {
    d: Decomposition,
    values: Vec<i64>,
    // authoritative only for ungrouped nodes
    plain: Vec<Color>,
    colorcid: Vec<Ident>,
    groups: Vec<GroupColors>,
    steps: u64,
}

impl ColorState {
    pub fn new(d: Decomposition, values: Vec<i64>, colors: Vec<Color>) -> Self {
        let n = d.tree().len();
        assert_eq!(values.len(), n, "one value per node");
        assert_eq!(colors.len(), n, "one color per node");
        let mut groups = vec![GroupColors::default(); n];
        let mut colorcid = vec![0; n];
        let mut steps = 0;
        for &s in d.supers() {
            let g = &mut groups[s];
            for &x in d.group_seq(s) {
                colorcid[x] = g.ident_for(colors[x], &mut steps);
                g.add(colors[x], values[x], &mut steps);
            }
        }
        Self {
            d,
            values,
            plain: colors,
            colorcid,
            groups,
            steps: 0,
        }
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.d
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn value(&self, x: NodeId) -> i64 {
        self.values[x]
    }

    /// Current color of `x`, compressing the identifier chain of grouped nodes.
    pub fn resolve_color(&mut self, x: NodeId) -> Color {
        match self.d.group_of(x) {
            Some(g) => resolve(&mut self.groups[g], self.colorcid[x], &mut self.steps),
            None => self.plain[x],
        }
    }

    /// Identifier-parent hops between `x`'s stored identifier and its root, without compressing.
    pub fn chain_length(&self, x: NodeId) -> usize {
        let Some(g) = self.d.group_of(x) else {
            return 0;
        };
        let g = &self.groups[g];
        let mut id = self.colorcid[x];
        let mut len = 0;
        while let Some(p) = g.cidparent[id as usize] {
            id = p;
            len += 1;
        }
        len
    }

    /// Recolors every node of color `a` on the path `i -> j` to `b`.
    pub fn recolor_path(&mut self, i: NodeId, j: NodeId, a: Color, b: Color) {
        if a == b {
            return;
        }
        let Self {
            d,
            values,
            plain,
            colorcid,
            groups,
            steps,
        } = self;
        let mut pieces = Vec::new();
        walk_path(d, i, j, steps, |p| pieces.push(p));
        for piece in pieces {
            match piece {
                PathPiece::FullGroup(g) => {
                    let gc = &mut groups[g];
                    *steps += 1;
                    let Some(ccidx) = gc.cid.get(&a).copied() else {
                        continue;
                    };
                    let ccidy = gc.ident_for(b, steps);
                    gc.cidparent[ccidx as usize] = Some(ccidy);
                    gc.cid.remove(&a);
                    *steps += 1;
                    if let Some(moved) = gc.aggv.remove(&a) {
                        gc.add(b, moved, steps);
                    }
                }
                PathPiece::GroupNode { group, node } => {
                    let gc = &mut groups[group];
                    if resolve(gc, colorcid[node], steps) != a {
                        continue;
                    }
                    colorcid[node] = gc.ident_for(b, steps);
                    gc.add(a, -values[node], steps);
                    gc.add(b, values[node], steps);
                }
                PathPiece::Ungrouped(x) => {
                    if plain[x] == a {
                        plain[x] = b;
                    }
                }
            }
        }
    }

    /// Sum of values of nodes of color `c` on the path `i -> j`.
    pub fn color_query(&mut self, i: NodeId, j: NodeId, c: Color) -> i64 {
        let Self {
            d,
            values,
            plain,
            colorcid,
            groups,
            steps,
        } = self;
        let mut total = 0i64;
        let mut lookups = 0u64;
        walk_path(d, i, j, steps, |piece| match piece {
            PathPiece::FullGroup(g) => {
                lookups += 1;
                total += groups[g].aggv.get(&c).copied().unwrap_or(0);
            }
            PathPiece::GroupNode { group, node } => {
                if resolve(&mut groups[group], colorcid[node], &mut lookups) == c {
                    total += values[node];
                }
            }
            PathPiece::Ungrouped(x) => {
                if plain[x] == c {
                    total += values[x];
                }
            }
        });
        *steps += lookups;
        total
    }

    /// Current color of every node.
    pub fn current_colors(&mut self) -> Vec<Color> {
        (0..self.values.len())
            .map(|x| self.resolve_color(x))
            .collect()
    }

    /// Full consistency check: identifier forests are acyclic, live identifiers are
    /// roots naming their own color, and `aggv` matches a recomputation.
    pub fn audit(&self) -> Result<(), String> {
        for &s in self.d.supers() {
            let g = &self.groups[s];
            let ids = g.revcid.len();
            for (&c, &id) in &g.cid {
                if g.revcid[id as usize] != c || g.cidparent[id as usize].is_some() {
                    return Err(format!("group {s}: color {c} has non-root identifier {id}"));
                }
            }
            let mut sums: HashMap<Color, i64> = HashMap::new();
            for &x in self.d.group_seq(s) {
                let mut id = self.colorcid[x];
                let mut hops = 0;
                while let Some(p) = g.cidparent[id as usize] {
                    id = p;
                    hops += 1;
                    if hops > ids {
                        return Err(format!("group {s}: identifier cycle from node {x}"));
                    }
                }
                let c = g.revcid[id as usize];
                if g.cid.get(&c) != Some(&id) {
                    return Err(format!(
                        "group {s}: node {x} resolves to dead identifier {id}"
                    ));
                }
                *sums.entry(c).or_insert(0) += self.values[x];
            }
            sums.retain(|_, v| *v != 0);
            if sums != g.aggv {
                return Err(format!(
                    "group {s}: aggv {:?} != recomputed {sums:?}",
                    g.aggv
                ));
            }
        }
        Ok(())
    }
}

fn resolve(g: &mut GroupColors, start: Ident, steps: &mut u64) -> Color {
    *steps += 1;
    let r = g.root_of(start, steps);
    g.revcid[r as usize]
}
