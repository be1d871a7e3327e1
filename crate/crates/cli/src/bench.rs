//! Step-count benchmarks: random ops on a generated instance, one CSV row per op.

use std::io::{self, Write};
use std::str::FromStr;

use rand::Rng;
use supertree::ancestor::AncestorColorIndex;
use supertree::bst::{RebuildBst, Threshold};
use supertree::color::ColorState;
use supertree::gen::{generate_tree, random_labels, rng, TreeKind};
use supertree::hlist::HListUniverse;
use supertree::{default_h, Decomposition, PathStore, SumAdd};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    Paths,
    Colors,
    Ancestors,
    Bst,
    HList,
}

impl FromStr for Structure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paths" => Ok(Structure::Paths),
            "colors" => Ok(Structure::Colors),
            "ancestors" => Ok(Structure::Ancestors),
            "bst" => Ok(Structure::Bst),
            "hlist" => Ok(Structure::HList),
            _ => Err(format!("unknown structure {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BenchConfig {
    pub kind: TreeKind,
    pub n: usize,
    pub h: Option<usize>,
    pub ops: usize,
    pub seed: u64,
    pub structure: Structure,
}

pub const HEADER: &str = "kind,n,h,op,steps";

/// Runs the benchmark and returns `(op, steps)` per measured operation.
pub fn measure(cfg: &BenchConfig) -> (usize, Vec<(&'static str, u64)>) {
    let n = cfg.n;
    let h = cfg.h.unwrap_or_else(|| default_h(n));
    let mut r = rng(cfg.seed);
    let mut rows = Vec::with_capacity(cfg.ops + 1);
    let palette = 4;
    match cfg.structure {
        Structure::Paths => {
            let t = generate_tree(cfg.kind, n, cfg.seed);
            let values = random_labels(n, -100, 100, cfg.seed ^ 1);
            let mut ps = PathStore::<SumAdd>::new(Decomposition::build(t, h).unwrap(), values);
            for _ in 0..cfg.ops {
                let (i, j) = (r.random_range(0..n), r.random_range(0..n));
                let delta = r.random_range(-10..=10);
                let before = ps.steps();
                let name = match r.random_range(0..5) {
                    0 => {
                        ps.find_lca(i, j);
                        "LCA"
                    }
                    1 => {
                        ps.path_query(i, j);
                        "PQ"
                    }
                    2 => {
                        ps.path_update(i, j, &delta);
                        "PU"
                    }
                    3 => {
                        ps.point_query(i);
                        "POINTQ"
                    }
                    _ => {
                        ps.point_update(i, &delta);
                        "POINTU"
                    }
                };
                rows.push((name, ps.steps() - before));
            }
        }
        Structure::Colors => {
            let t = generate_tree(cfg.kind, n, cfg.seed);
            let values = random_labels(n, -100, 100, cfg.seed ^ 1);
            let colors = random_labels(n, 0, palette, cfg.seed ^ 2);
            let mut cs = ColorState::new(Decomposition::build(t, h).unwrap(), values, colors);
            for _ in 0..cfg.ops {
                let (i, j) = (r.random_range(0..n), r.random_range(0..n));
                let (a, b) = (r.random_range(0..palette), r.random_range(0..palette));
                let before = cs.steps();
                let name = if r.random_bool(0.5) {
                    cs.color_query(i, j, a);
                    "CQ"
                } else {
                    cs.recolor_path(i, j, a, b);
                    "CU"
                };
                rows.push((name, cs.steps() - before));
            }
        }
        Structure::Ancestors => {
            let t = generate_tree(cfg.kind, n, cfg.seed);
            let colors = random_labels(n, 0, palette, cfg.seed ^ 2);
            let idx = AncestorColorIndex::build(Decomposition::build(t, h).unwrap(), &colors);
            rows.push(("build", idx.build_steps()));
            for _ in 0..cfg.ops {
                let (a, b) = (r.random_range(0..palette), r.random_range(0..palette));
                rows.push(("APQ", idx.query_with_steps(a, b).1));
            }
        }
        Structure::Bst => {
            let mut t = RebuildBst::<usize>::default();
            for _ in 0..cfg.ops {
                let k = r.random_range(0..n);
                let before = t.steps();
                let name = match r.random_range(0..3) {
                    0 => {
                        t.insert(k);
                        "INS"
                    }
                    1 => {
                        t.delete(&k);
                        "DEL"
                    }
                    _ => {
                        t.contains(&k);
                        "HAS"
                    }
                };
                rows.push((name, t.steps() - before));
            }
            return (Threshold::SqrtLog.limit(n), rows);
        }
        Structure::HList => {
            let mut u = HListUniverse::<()>::new(h).unwrap();
            u.new_list(n);
            for _ in 0..cfg.ops {
                let x = r.random_range(0..n);
                let dir = r.random_range(0..2);
                let before = u.steps();
                match r.random_range(0..3) {
                    0 => {
                        u.find_endpoint(x, dir);
                        rows.push(("ENDP", u.steps() - before));
                    }
                    1 => {
                        u.element_at_distance(x, dir, r.random_range(0..n));
                        rows.push(("DIST", u.steps() - before));
                    }
                    _ => {
                        let Some(y) = u.neighbors(x)[dir] else {
                            continue;
                        };
                        u.split(x, y).unwrap();
                        let mid = u.steps();
                        rows.push(("SPLIT", mid - before));
                        u.concatenate(x, y).unwrap();
                        rows.push(("CAT", u.steps() - mid));
                    }
                }
            }
        }
    }
    (h, rows)
}

pub fn run(cfg: &BenchConfig, out: &mut dyn Write) -> io::Result<()> {
    let (h, rows) = measure(cfg);
    writeln!(out, "{HEADER}")?;
    for (op, steps) in rows {
        writeln!(out, "{},{},{h},{op},{steps}", cfg.kind, cfg.n)?;
    }
    Ok(())
}
