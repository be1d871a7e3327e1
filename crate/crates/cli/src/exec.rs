//! Script execution against each structure, optionally diffed op by op against the
//! brute-force references.

use std::fmt;
use std::io::{self, Write};

use supertree::ancestor::AncestorColorIndex;
use supertree::bst::{DeleteMode, RebuildBst, Threshold};
use supertree::color::ColorState;
use supertree::hlist::{ElemId, HListUniverse};
use supertree::oracle::{self, ArrayLists, NaiveColors, NaivePaths, SortedSet};
use supertree::{default_h, Decomposition, ParseError, PathStore, SumAdd, TreeFile};

use crate::script::{Line, Op};

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub h: Option<usize>,
    pub oracle: bool,
    pub logical: bool,
}

#[derive(Debug)]
pub enum RunError {
    /// Malformed input or an op whose precondition does not hold.
    Script(ParseError),
    Divergence {
        line: usize,
        op: String,
        got: String,
        want: String,
    },
    Io(io::Error),
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Divergence { .. } => 1,
            RunError::Script(_) | RunError::Io(_) => 2,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Script(e) => write!(f, "error: {e}"),
            RunError::Divergence {
                line,
                op,
                got,
                want,
            } => {
                write!(
                    f,
                    "divergence at line {line}: {op}: got {got}, oracle {want}"
                )
            }
            RunError::Io(e) => write!(f, "error: {e}"),
        }
    }
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        RunError::Io(e)
    }
}

impl From<ParseError> for RunError {
    fn from(e: ParseError) -> Self {
        RunError::Script(e)
    }
}

type Result<T> = std::result::Result<T, RunError>;

fn diverged(l: &Line, got: impl fmt::Debug, want: impl fmt::Debug) -> RunError {
    RunError::Divergence {
        line: l.line,
        op: l.text.clone(),
        got: format!("{got:?}"),
        want: format!("{want:?}"),
    }
}

/// Fails with a divergence when an oracle answer is present and differs.
fn check<T: PartialEq + fmt::Debug>(l: &Line, got: &T, want: Option<T>) -> Result<()> {
    match want {
        Some(w) if w != *got => Err(diverged(l, got, w)),
        _ => Ok(()),
    }
}

/// Final-state comparison, reported against the last script line.
fn check_final<T: PartialEq + fmt::Debug>(script: &[Line], got: T, want: T) -> Result<()> {
    if got == want {
        return Ok(());
    }
    let line = script.last().map_or(0, |l| l.line);
    Err(RunError::Divergence {
        line,
        op: "final state".into(),
        got: format!("{got:?}"),
        want: format!("{want:?}"),
    })
}

fn audit_line(out: &mut dyn Write, r: std::result::Result<(), String>) -> io::Result<()> {
    match r {
        Ok(()) => writeln!(out, "OK"),
        Err(_) => writeln!(out, "FAIL"),
    }
}

fn decompose_tree(tf: &TreeFile, opt: &Options) -> Result<Decomposition> {
    let h = opt.h.unwrap_or_else(|| default_h(tf.tree.len()));
    Decomposition::build(tf.tree.clone(), h).map_err(|e| ParseError::new(0, e.to_string()).into())
}

pub fn decompose(tf: &TreeFile, opt: &Options, out: &mut dyn Write) -> Result<()> {
    let d = decompose_tree(tf, opt)?;
    let join = |xs: &[usize]| {
        xs.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    writeln!(out, "n {}", d.tree().len())?;
    writeln!(out, "h {}", d.h())?;
    writeln!(out, "supers {}", join(d.supers()))?;
    for &s in d.supers() {
        match d.super_parent(s) {
            Some(p) => writeln!(out, "group {s} parent {p} : {}", join(d.group_seq(s)))?,
            None => writeln!(out, "group {s} parent - : {}", join(d.group_seq(s)))?,
        }
    }
    let ungrouped: Vec<usize> = d.ungrouped().collect();
    writeln!(out, "ungrouped {}", join(&ungrouped))?;
    writeln!(out, "isn {}", d.isn_count())?;
    writeln!(out, "esn {}", d.esn_count())?;
    writeln!(out, "build_steps {}", d.build_steps())?;
    Ok(())
}

pub fn ancestor_index(tf: &TreeFile, opt: &Options, out: &mut dyn Write) -> Result<()> {
    let d = decompose_tree(tf, opt)?;
    let decomp_steps = d.build_steps();
    let idx = AncestorColorIndex::build(d, &tf.colors);
    writeln!(out, "n {}", tf.tree.len())?;
    writeln!(out, "h {}", idx.decomposition().h())?;
    writeln!(out, "supers {}", idx.decomposition().supers().len())?;
    writeln!(out, "pairs {}", idx.pair_table_len())?;
    writeln!(out, "decompose_steps {decomp_steps}")?;
    writeln!(out, "build_steps {}", idx.build_steps())?;
    Ok(())
}

pub fn paths(
    tf: &TreeFile,
    script: &[Line],
    opt: &Options,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let d = decompose_tree(tf, opt)?;
    let mut ps = PathStore::<SumAdd>::new(d, tf.values.clone());
    let mut naive = opt
        .oracle
        .then(|| NaivePaths::<SumAdd>::new(tf.tree.clone(), tf.values.clone()));
    for l in script {
        match l.op {
            Op::Lca(i, j) => {
                let got = ps.find_lca(i, j);
                check(l, &got, naive.as_ref().map(|o| o.lca(i, j)))?;
                writeln!(out, "{got}")?;
            }
            Op::Pq(i, j) => {
                let got = ps.path_query(i, j);
                check(l, &got, naive.as_ref().map(|o| o.path_query(i, j)))?;
                writeln!(out, "{got}")?;
            }
            Op::PointQ(x) => {
                let got = ps.point_query(x);
                check(l, &got, naive.as_ref().map(|o| o.point_query(x)))?;
                writeln!(out, "{got}")?;
            }
            Op::Pu(i, j, delta) => {
                ps.path_update(i, j, &delta);
                if let Some(o) = naive.as_mut() {
                    o.path_update(i, j, &delta);
                }
            }
            Op::PointU(x, delta) => {
                ps.point_update(x, &delta);
                if let Some(o) = naive.as_mut() {
                    o.point_update(x, &delta);
                }
            }
            Op::Audit => audit_line(out, ps.audit())?,
            Op::Stats => {
                let d = ps.decomposition();
                writeln!(err, "h={}", d.h())?;
                writeln!(err, "supers={}", d.supers().len())?;
                writeln!(err, "build_steps={}", d.build_steps())?;
                writeln!(err, "steps={}", ps.steps())?;
            }
            _ => unreachable!("rejected by the parser"),
        }
    }
    if let Some(o) = naive {
        check_final(script, ps.true_values(), o.values)?;
    }
    Ok(())
}

pub fn colors(
    tf: &TreeFile,
    script: &[Line],
    opt: &Options,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let d = decompose_tree(tf, opt)?;
    let mut cs = ColorState::new(d, tf.values.clone(), tf.colors.clone());
    let mut naive = opt
        .oracle
        .then(|| NaiveColors::new(tf.tree.clone(), tf.values.clone(), tf.colors.clone()));
    for l in script {
        match l.op {
            Op::Cq(i, j, c) => {
                let got = cs.color_query(i, j, c);
                check(l, &got, naive.as_ref().map(|o| o.color_fold(i, j, c)))?;
                writeln!(out, "{got}")?;
            }
            Op::Cu(i, j, a, b) => {
                cs.recolor_path(i, j, a, b);
                if let Some(o) = naive.as_mut() {
                    o.recolor(i, j, a, b);
                }
            }
            Op::Audit => audit_line(out, cs.audit())?,
            Op::Stats => {
                let d = cs.decomposition();
                writeln!(err, "h={}", d.h())?;
                writeln!(err, "supers={}", d.supers().len())?;
                writeln!(err, "steps={}", cs.steps())?;
            }
            _ => unreachable!("rejected by the parser"),
        }
    }
    if let Some(o) = naive {
        check_final(script, cs.current_colors(), o.colors)?;
    }
    Ok(())
}

pub fn ancestors(
    tf: &TreeFile,
    script: &[Line],
    opt: &Options,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let d = decompose_tree(tf, opt)?;
    let idx = AncestorColorIndex::build(d, &tf.colors);
    let mut query_steps = 0;
    for l in script {
        match l.op {
            Op::Apq(a, b) => {
                let (got, steps) = idx.query_with_steps(a, b);
                query_steps += steps;
                let want = opt
                    .oracle
                    .then(|| oracle::ancestor_pairs(&tf.tree, &tf.colors, a, b));
                check(l, &got, want)?;
                writeln!(out, "{got}")?;
            }
            Op::Audit => audit_line(out, idx.audit())?,
            Op::Stats => {
                writeln!(err, "h={}", idx.decomposition().h())?;
                writeln!(err, "pairs={}", idx.pair_table_len())?;
                writeln!(err, "build_steps={}", idx.build_steps())?;
                writeln!(err, "query_steps={query_steps}")?;
            }
            _ => unreachable!("rejected by the parser"),
        }
    }
    Ok(())
}

pub fn bst(script: &[Line], opt: &Options, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let mode = if opt.logical {
        DeleteMode::Logical
    } else {
        DeleteMode::Physical
    };
    let mut t = RebuildBst::<i64>::new(mode, Threshold::SqrtLog);
    let mut naive = opt.oracle.then(SortedSet::<i64>::new);
    for l in script {
        match l.op {
            Op::Ins(k) => {
                let got = t.insert(k);
                check(l, &got, naive.as_mut().map(|o| o.insert(k)))?;
            }
            Op::Del(k) => {
                let got = t.delete(&k);
                check(l, &got, naive.as_mut().map(|o| o.remove(&k)))?;
            }
            Op::Has(k) => {
                let got = t.contains(&k);
                check(l, &got, naive.as_ref().map(|o| o.contains(&k)))?;
                writeln!(out, "{}", u8::from(got))?;
            }
            Op::Rebuild => t.rebuild(),
            Op::Audit => audit_line(out, t.audit())?,
            Op::Stats => {
                writeln!(err, "size={}", t.len())?;
                writeln!(err, "height={}", t.height())?;
                writeln!(err, "threshold={}", t.threshold().limit(t.len()))?;
                writeln!(err, "rebuilds={}", t.rebuilds())?;
                writeln!(err, "steps={}", t.steps())?;
            }
            _ => unreachable!("rejected by the parser"),
        }
    }
    if let Some(o) = naive {
        check_final(script, t.in_order(), o.into_iter().collect::<Vec<_>>())?;
    }
    Ok(())
}

pub fn hlist(
    h: usize,
    script: &[Line],
    opt: &Options,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let bad = |l: &Line, msg: String| RunError::Script(ParseError::new(l.line, msg));
    let mut u = HListUniverse::<()>::new(h).map_err(|e| ParseError::new(0, e.to_string()))?;
    let mut naive = opt.oracle.then(ArrayLists::default);

    // The oracle takes a neighbor element where the structure takes a slot.
    let toward =
        |u: &HListUniverse, naive: &Option<ArrayLists>, l: &Line, x: ElemId, dir: usize| {
            let t = u.neighbors(x)[dir];
            if let (Some(o), Some(y)) = (naive, t) {
                if !o.neighbors(x).contains(&y) {
                    return Err(diverged(l, u.neighbors(x), o.neighbors(x)));
                }
            }
            Ok(t)
        };

    for l in script {
        let live = |x: ElemId| {
            if x < u.len() {
                Ok(x)
            } else {
                Err(bad(l, format!("no element {x}")))
            }
        };
        match l.op {
            Op::NewList(id, len) => {
                if id != u.len() {
                    return Err(bad(
                        l,
                        format!("next free element id is {}, not {id}", u.len()),
                    ));
                }
                if len == 0 {
                    return Err(bad(l, "a list needs at least one element".into()));
                }
                let ids = u.new_list(len);
                if let Some(o) = naive.as_mut() {
                    o.push_list(ids);
                }
            }
            Op::Endp(x, dir) => {
                live(x)?;
                let t = toward(&u, &naive, l, x, dir)?;
                let got = u.find_endpoint(x, dir);
                check(l, &got, naive.as_ref().map(|o| o.endpoint(x, t)))?;
                writeln!(out, "{got}")?;
            }
            Op::Dist(x, dir, dist) => {
                live(x)?;
                let t = toward(&u, &naive, l, x, dir)?;
                let got = u.element_at_distance(x, dir, dist);
                check(l, &got, naive.as_ref().map(|o| o.at_distance(x, t, dist)))?;
                match got {
                    Some(y) => writeln!(out, "{y}")?,
                    None => writeln!(out, "NONE")?,
                }
            }
            Op::Cat(x, y) => {
                live(x)?;
                live(y)?;
                u.concatenate(x, y).map_err(|e| bad(l, e.to_string()))?;
                if let Some(o) = naive.as_mut() {
                    o.concatenate(x, y);
                }
            }
            Op::Split(x, y) => {
                live(x)?;
                live(y)?;
                u.split(x, y).map_err(|e| bad(l, e.to_string()))?;
                if let Some(o) = naive.as_mut() {
                    o.split(x, y);
                }
            }
            Op::Audit => {
                if let Some(o) = naive.as_ref() {
                    for x in 0..u.len() {
                        let mut got: Vec<ElemId> = u.neighbors(x).into_iter().flatten().collect();
                        got.sort();
                        check(l, &got, Some(o.neighbors(x)))?;
                    }
                }
                audit_line(out, u.audit())?;
            }
            Op::Stats => {
                writeln!(err, "h={}", u.h())?;
                writeln!(err, "elements={}", u.len())?;
                writeln!(err, "steps={}", u.steps())?;
            }
            _ => unreachable!("rejected by the parser"),
        }
    }
    Ok(())
}
