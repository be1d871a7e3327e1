//! Ops-script parsing. One op per line; blank lines and `#` comments are skipped.

use supertree::color::Color;
use supertree::hlist::ElemId;
use supertree::{NodeId, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Paths,
    Colors,
    Ancestors,
    Bst,
    HList,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Op {
    Lca(NodeId, NodeId),
    Pq(NodeId, NodeId),
    Pu(NodeId, NodeId, i64),
    PointQ(NodeId),
    PointU(NodeId, i64),
    Cq(NodeId, NodeId, Color),
    Cu(NodeId, NodeId, Color, Color),
    Apq(Color, Color),
    Ins(i64),
    Del(i64),
    Has(i64),
    Rebuild,
    NewList(ElemId, usize),
    Endp(ElemId, usize),
    Dist(ElemId, usize, usize),
    Cat(ElemId, ElemId),
    Split(ElemId, ElemId),
    Audit,
    Stats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub line: usize,
    pub text: String,
    pub op: Op,
}

fn allowed(mode: Mode, name: &str) -> bool {
    if matches!(name, "STATS" | "AUDIT") {
        return true;
    }
    let names: &[&str] = match mode {
        Mode::Paths => &["LCA", "PQ", "PU", "POINTQ", "POINTU"],
        Mode::Colors => &["CQ", "CU"],
        Mode::Ancestors => &["APQ"],
        Mode::Bst => &["INS", "DEL", "HAS", "REBUILD"],
        Mode::HList => &["NEWLIST", "ENDP", "DIST", "CAT", "SPLIT"],
    };
    names.contains(&name)
}

struct Args<'a> {
    line: usize,
    words: Vec<&'a str>,
    nodes: Option<usize>,
}

impl Args<'_> {
    fn int(&self, k: usize) -> Result<i64, ParseError> {
        self.words[k]
            .parse()
            .map_err(|_| ParseError::new(self.line, format!("bad integer {:?}", self.words[k])))
    }

    fn index(&self, k: usize) -> Result<usize, ParseError> {
        self.words[k]
            .parse()
            .map_err(|_| ParseError::new(self.line, format!("bad index {:?}", self.words[k])))
    }

    fn node(&self, k: usize) -> Result<NodeId, ParseError> {
        let x = self.index(k)?;
        match self.nodes {
            Some(n) if x >= n => Err(ParseError::new(
                self.line,
                format!("node {x} out of range 0..{n}"),
            )),
            _ => Ok(x),
        }
    }

    fn slot(&self, k: usize) -> Result<usize, ParseError> {
        match self.index(k)? {
            i @ (0 | 1) => Ok(i),
            i => Err(ParseError::new(
                self.line,
                format!("direction must be 0 or 1, got {i}"),
            )),
        }
    }
}

/// Parses `text` for `mode`. `nodes` bounds node ids for the tree modes.
pub fn parse_script(text: &str, mode: Mode, nodes: Option<usize>) -> Result<Vec<Line>, ParseError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = trimmed.split_whitespace().collect();
        let name = words[0];
        let arity = match name {
            "STATS" | "AUDIT" | "REBUILD" => 0,
            "POINTQ" | "INS" | "DEL" | "HAS" => 1,
            "LCA" | "PQ" | "POINTU" | "APQ" | "NEWLIST" | "ENDP" | "CAT" | "SPLIT" => 2,
            "PU" | "CQ" | "DIST" => 3,
            "CU" => 4,
            _ => return Err(ParseError::new(line, format!("unknown op {name:?}"))),
        };
        if !allowed(mode, name) {
            return Err(ParseError::new(
                line,
                format!("op {name} is not valid here"),
            ));
        }
        if words.len() != arity + 1 {
            return Err(ParseError::new(
                line,
                format!("{name} takes {arity} arguments, got {}", words.len() - 1),
            ));
        }
        let a = Args { line, words, nodes };
        let op = match name {
            "LCA" => Op::Lca(a.node(1)?, a.node(2)?),
            "PQ" => Op::Pq(a.node(1)?, a.node(2)?),
            "PU" => Op::Pu(a.node(1)?, a.node(2)?, a.int(3)?),
            "POINTQ" => Op::PointQ(a.node(1)?),
            "POINTU" => Op::PointU(a.node(1)?, a.int(2)?),
            "CQ" => Op::Cq(a.node(1)?, a.node(2)?, a.int(3)?),
            "CU" => Op::Cu(a.node(1)?, a.node(2)?, a.int(3)?, a.int(4)?),
            "APQ" => Op::Apq(a.int(1)?, a.int(2)?),
            "INS" => Op::Ins(a.int(1)?),
            "DEL" => Op::Del(a.int(1)?),
            "HAS" => Op::Has(a.int(1)?),
            "REBUILD" => Op::Rebuild,
            "NEWLIST" => Op::NewList(a.index(1)?, a.index(2)?),
            "ENDP" => Op::Endp(a.index(1)?, a.slot(2)?),
            "DIST" => Op::Dist(a.index(1)?, a.slot(2)?, a.index(3)?),
            "CAT" => Op::Cat(a.index(1)?, a.index(2)?),
            "SPLIT" => Op::Split(a.index(1)?, a.index(2)?),
            "AUDIT" => Op::Audit,
            "STATS" => Op::Stats,
            _ => unreachable!(),
        };
        out.push(Line {
            line,
            text: trimmed.to_string(),
            op,
        });
    }
    Ok(out)
}
