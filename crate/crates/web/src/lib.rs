//! WebAssembly bindings for the browser demo. Every export returns a JSON string;
//! errors come back as `{"error": "..."}`.

use serde_json::{json, Value};
use supertree::bst::{RebuildBst, Threshold};
use supertree::gen::{generate_tree, random_labels, TreeKind};
use supertree::oracle::path_nodes;
use supertree::path::{walk_path, PathPiece};
use supertree::{Decomposition, PathStore, RootedTree, SumAdd};
use wasm_bindgen::prelude::*;

const MAX_NODES: usize = 2000;

fn build(kind: &str, n: usize, h: usize, seed: u64) -> Result<Decomposition, String> {
    let kind: TreeKind = kind.parse()?;
    if n == 0 || n > MAX_NODES {
        return Err(format!("n must be between 1 and {MAX_NODES}"));
    }
    Decomposition::build(generate_tree(kind, n, seed), h).map_err(|e| e.to_string())
}

/// Leaves get consecutive columns; a parent sits at the mean of its children.
fn layout(t: &RootedTree) -> Vec<f64> {
    let mut x = vec![0.0; t.len()];
    let mut next = 0.0;
    let mut stack = vec![(t.root(), false)];
    while let Some((v, done)) = stack.pop() {
        let kids = t.children(v);
        if kids.is_empty() {
            x[v] = next;
            next += 1.0;
        } else if done {
            x[v] = kids.iter().map(|&c| x[c]).sum::<f64>() / kids.len() as f64;
        } else {
            stack.push((v, true));
            stack.extend(kids.iter().rev().map(|&c| (c, false)));
        }
    }
    x
}

fn or_error(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// Nodes with layout coordinates, super/special flags and group membership.
pub fn decomposition_json(kind: &str, n: usize, h: usize, seed: u64) -> String {
    or_error(build(kind, n, h, seed).map(|d| {
        let t = d.tree();
        let x = layout(t);
        let nodes: Vec<Value> = (0..t.len())
            .map(|v| {
                json!({
                    "id": v,
                    "parent": t.parent(v),
                    "level": t.level(v),
                    "x": x[v],
                    "special": d.is_special(v),
                    "super": d.is_super(v),
                    "group": d.group_of(v),
                })
            })
            .collect();
        json!({
            "h": d.h(),
            "nodes": nodes,
            "supers": d.supers(),
            "isn": d.isn_count(),
            "esn": d.esn_count(),
            "ungrouped": d.ungrouped().count(),
            "build_steps": d.build_steps(),
        })
    }))
}

/// Splits the path `i -> j` into pieces and compares the step count of a grouped
/// path sum against walking every node.
pub fn path_json(kind: &str, n: usize, h: usize, seed: u64, i: usize, j: usize) -> String {
    or_error(build(kind, n, h, seed).and_then(|d| {
        if i >= n || j >= n {
            return Err(format!("nodes must be below {n}"));
        }
        let mut pieces = Vec::new();
        let mut walk_steps = 0;
        let lca = walk_path(&d, i, j, &mut walk_steps, |p| {
            pieces.push(match p {
                PathPiece::FullGroup(g) => {
                    json!({ "kind": "group", "group": g, "nodes": d.group_seq(g) })
                }
                PathPiece::GroupNode { group, node } => {
                    json!({ "kind": "node", "group": group, "nodes": [node] })
                }
                PathPiece::Ungrouped(x) => json!({ "kind": "ungrouped", "nodes": [x] }),
            })
        });
        let naive = path_nodes(d.tree(), i, j);
        let values = random_labels(n, -9, 10, seed ^ 1);
        let naive_sum: i64 = naive.iter().map(|&x| values[x]).sum();
        let mut store = PathStore::<SumAdd>::new(d, values);
        let before = store.steps();
        let sum = store.path_query(i, j);
        Ok(json!({
            "lca": lca,
            "pieces": pieces,
            "path": naive,
            "sum": sum,
            "naive_sum": naive_sum,
            "steps": store.steps() - before,
            "naive_steps": naive.len(),
        }))
    }))
}

/// Height of the rebuild tree against its threshold as keys arrive.
/// `pattern` is `ascending` or `random`.
pub fn bst_curve_json(pattern: &str, count: usize, seed: u64) -> String {
    let ascending = match pattern {
        "ascending" => true,
        "random" => false,
        _ => return json!({ "error": format!("unknown pattern {pattern:?}") }).to_string(),
    };
    let count = count.min(100_000);
    let keys: Vec<i64> = if ascending {
        (0..count as i64).collect()
    } else {
        random_labels(count, 0, i64::MAX, seed)
    };
    let mut t = RebuildBst::<i64>::default();
    let every = (count / 400).max(1);
    let mut samples = Vec::new();
    let mut rebuilds_at = Vec::new();
    for (k, key) in keys.into_iter().enumerate() {
        let before = t.rebuilds();
        t.insert(key);
        if t.rebuilds() > before {
            rebuilds_at.push(t.len());
        }
        if k % every == 0 || k + 1 == count {
            samples.push(json!([
                t.len(),
                t.height(),
                Threshold::SqrtLog.limit(t.len())
            ]));
        }
    }
    json!({
        "samples": samples,
        "rebuilds_at": rebuilds_at,
        "steps": t.steps(),
    })
    .to_string()
}

#[wasm_bindgen]
pub fn decomposition(kind: &str, n: usize, h: usize, seed: u32) -> String {
    decomposition_json(kind, n, h, seed.into())
}

#[wasm_bindgen]
pub fn path_query(kind: &str, n: usize, h: usize, seed: u32, i: usize, j: usize) -> String {
    path_json(kind, n, h, seed.into(), i, j)
}

#[wasm_bindgen]
pub fn bst_curve(pattern: &str, count: usize, seed: u32) -> String {
    bst_curve_json(pattern, count, seed.into())
}
