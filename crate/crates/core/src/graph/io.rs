//! Text formats for graphs. Vertices and grid coordinates are 1-based.
//!
//! ```text
//! graph 3 2        # n m
//! 1 2 1.5          # i j w
//! 2 3 sqrt(2)
//! root 2           # trees only, optional
//!
//! grid 2 2         # rows cols
//! h 1 1 1.0        # (1,1)-(1,2)
//! v 1 1 2.0        # (1,1)-(2,1)
//! ```

use super::{GridGraph, TreeGraph, WeightedGraph};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt::Write;

fn perr(line: usize, token: &str, msg: &str) -> Error {
    Error::Parse { line, token: token.to_string(), msg: msg.to_string() }
}

/// Meaningful lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let body = l.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then(|| (i + 1, body.split_whitespace().collect()))
    })
}

/// A positive real, written plainly or as `sqrt(x)`.
pub fn parse_weight(tok: &str) -> Option<f64> {
    let v = match tok.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        Some(inner) => inner.parse::<f64>().ok()?.sqrt(),
        None => tok.parse::<f64>().ok()?,
    };
    v.is_finite().then_some(v)
}

fn int(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| perr(line, tok, "expected a non-negative integer"))
}

fn vertex(line: usize, tok: &str, n: usize) -> Result<usize> {
    let v = int(line, tok)?;
    if v == 0 || v > n {
        return Err(perr(line, tok, "vertex out of range"));
    }
    Ok(v - 1)
}

fn weight(line: usize, tok: &str) -> Result<f64> {
    match parse_weight(tok) {
        Some(w) if w > 0.0 => Ok(w),
        _ => Err(perr(line, tok, "expected a positive weight")),
    }
}

fn graph_and_root(text: &str) -> Result<(WeightedGraph, Option<usize>)> {
    let mut it = lines(text);
    let (hl, head) = it.next().ok_or_else(|| perr(0, "", "empty input"))?;
    if head.len() != 3 || !(head[0] == "graph" || head[0] == "tree") {
        return Err(perr(hl, head.first().copied().unwrap_or(""), "expected `graph n m`"));
    }
    let n = int(hl, head[1])?;
    let m = int(hl, head[2])?;
    let mut edges = Vec::new();
    let mut root = None;
    for (l, toks) in it {
        if toks[0] == "root" {
            if toks.len() != 2 {
                return Err(perr(l, toks[0], "expected `root v`"));
            }
            root = Some(vertex(l, toks[1], n)?);
            continue;
        }
        if toks.len() != 3 {
            return Err(perr(l, toks[0], "expected `i j w`"));
        }
        edges.push((vertex(l, toks[0], n)?, vertex(l, toks[1], n)?, weight(l, toks[2])?));
    }
    if edges.len() != m {
        return Err(perr(hl, head[2], &format!("header promises {m} edges, found {}", edges.len())));
    }
    let g = WeightedGraph::new(n, edges).map_err(|e| perr(hl, "", &e.to_string()))?;
    Ok((g, root))
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    graph_and_root(text).map(|(g, _)| g)
}

/// Tree file; the root defaults to vertex 1.
pub fn parse_tree(text: &str) -> Result<TreeGraph> {
    let (g, root) = graph_and_root(text)?;
    TreeGraph::new(g, root.unwrap_or(0))
}

pub fn parse_grid(text: &str) -> Result<GridGraph> {
    let mut it = lines(text);
    let (hl, head) = it.next().ok_or_else(|| perr(0, "", "empty input"))?;
    if head.len() != 3 || head[0] != "grid" {
        return Err(perr(hl, head.first().copied().unwrap_or(""), "expected `grid rows cols`"));
    }
    let (s, t) = (int(hl, head[1])?, int(hl, head[2])?);
    if s == 0 || t == 0 || s * t < 2 {
        return Err(Error::EmptyGraph);
    }
    let mut w: HashMap<(bool, usize, usize), f64> = HashMap::new();
    for (l, toks) in it {
        if toks.len() != 4 {
            return Err(perr(l, toks[0], "expected `h|v i j w`"));
        }
        let horizontal = match toks[0] {
            "h" => true,
            "v" => false,
            other => return Err(perr(l, other, "expected `h` or `v`")),
        };
        let i = vertex(l, toks[1], s)?;
        let j = vertex(l, toks[2], t)?;
        if (horizontal && j + 1 >= t) || (!horizontal && i + 1 >= s) {
            return Err(perr(l, toks[0], "edge leaves the grid"));
        }
        if w.insert((horizontal, i, j), weight(l, toks[3])?).is_some() {
            return Err(perr(l, toks[0], "duplicate edge"));
        }
    }
    let mut missing = None;
    let g = GridGraph::from_fn(s, t, |h, i, j| {
        w.get(&(h, i, j)).copied().unwrap_or_else(|| {
            missing.get_or_insert((h, i, j));
            1.0
        })
    })?;
    if let Some((h, i, j)) = missing {
        let kind = if h { "h" } else { "v" };
        return Err(perr(hl, kind, &format!("missing weight for edge {kind} {} {}", i + 1, j + 1)));
    }
    Ok(g)
}

pub fn emit_graph(g: &WeightedGraph, root: Option<usize>) -> String {
    let mut out = format!("graph {} {}\n", g.num_vertices(), g.num_edges());
    for e in g.edges() {
        writeln!(out, "{} {} {:?}", e.u + 1, e.v + 1, e.weight).unwrap();
    }
    if let Some(r) = root {
        writeln!(out, "root {}", r + 1).unwrap();
    }
    out
}

pub fn emit_grid(g: &GridGraph) -> String {
    let mut out = format!("grid {} {}\n", g.rows(), g.cols());
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            if j + 1 < g.cols() {
                writeln!(out, "h {} {} {:?}", i + 1, j + 1, g.horizontal(i, j)).unwrap();
            }
            if i + 1 < g.rows() {
                writeln!(out, "v {} {} {:?}", i + 1, j + 1, g.vertical(i, j)).unwrap();
            }
        }
    }
    out
}
