//! Graph states of grids by recursive edge merging.
//!
//! Working backwards from the target, a controlled RBS on a vertex `c` can
//! fold the amplitude of edge `ca` into an adjacent edge `cb`. Folding a
//! full column (or row) of edges in the middle of the grid splits it in
//! two, and the halves are processed recursively until only independent
//! edges remain; those are undone with CNOTs and an inverse unary
//! encoding. The preparation circuit is the inverse of that sequence.

use super::tree::prepare_tree;
use super::{GridGraph, TreeGraph};
use crate::circuit::{Circuit, Gate, Qubit};
use crate::error::{Error, Result};
use crate::layout::{Prepared, RegisterLayout};
use crate::unary::emit_unary;
use std::collections::HashMap;

/// One fold: with `control` set, edge `deleted = (control, first)` is
/// rotated into `kept = (control, second)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fold {
    pub control: usize,
    pub first: usize,
    pub second: usize,
    /// Angle of the folding (uncompute) rotation on `(first, second)`.
    pub angle: f64,
    /// Weight of `kept` after the fold.
    pub merged: f64,
    /// Recursion depth of the cut that produced the fold.
    pub level: usize,
}

/// The classical schedule of folds plus the surviving independent edges.
#[derive(Clone, Debug)]
pub struct GridPlan {
    pub folds: Vec<Fold>,
    pub remaining: Vec<(usize, usize, f64)>,
    /// Largest ratio of a sub-grid's size to its parent's.
    pub worst_split: f64,
    /// Every sub-grid had at most `⌈2N/3⌉` vertices for a parent of size `N`.
    pub balanced: bool,
}

type Weights = HashMap<(usize, usize), f64>;

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

struct Planner<'a> {
    grid: &'a GridGraph,
    weights: Weights,
    folds: Vec<Fold>,
    worst: f64,
    balanced: bool,
}

impl Planner<'_> {
    fn v(&self, i: usize, j: usize) -> usize {
        self.grid.vertex(i, j)
    }

    fn fold(&mut self, control: usize, first: usize, second: usize, level: usize) {
        let wd = self.weights.remove(&key(control, first)).expect("folded edge exists");
        let wk = self.weights[&key(control, second)];
        let merged = wd.hypot(wk);
        self.weights.insert(key(control, second), merged);
        self.folds.push(Fold { control, first, second, angle: wd.atan2(wk), merged, level });
    }

    fn child(&mut self, parent: usize, rows: (usize, usize), cols: (usize, usize), level: usize) {
        let size = (rows.1 - rows.0) * (cols.1 - cols.0);
        self.worst = self.worst.max(size as f64 / parent as f64);
        if size > (2 * parent).div_ceil(3) {
            self.balanced = false;
        }
        self.cut(rows, cols, level);
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    fn cut(&mut self, (r0, r1): (usize, usize), (c0, c1): (usize, usize), level: usize) {
        let (s, t) = (r1 - r0, c1 - c0);
        if t >= 3 {
            let m = c0 + t / 2;
            for i in r0..r1 {
                let (a, c, b) = (self.v(i, m - 1), self.v(i, m), self.v(i, m + 1));
                self.fold(c, a, b, level);
            }
            self.child(s * t, (r0, r1), (c0, m), level + 1);
            self.child(s * t, (r0, r1), (m, c1), level + 1);
        } else if s >= 3 {
            let m = r0 + s / 2;
            for j in c0..c1 {
                let (a, c, b) = (self.v(m - 1, j), self.v(m, j), self.v(m + 1, j));
                self.fold(c, a, b, level);
            }
            self.child(s * t, (r0, m), (c0, c1), level + 1);
            self.child(s * t, (m, r1), (c0, c1), level + 1);
        } else if s == 2 && t == 2 {
            let (v11, v12) = (self.v(r0, c0), self.v(r0, c0 + 1));
            let (v21, v22) = (self.v(r0 + 1, c0), self.v(r0 + 1, c0 + 1));
            self.fold(v21, v11, v22, level);
            self.fold(v22, v21, v12, level);
            self.fold(v12, v22, v11, level);
        }
    }
}

/// Computes the fold schedule for a grid with at least two rows and columns.
pub fn plan_grid(g: &GridGraph) -> Result<GridPlan> {
    if g.rows() < 2 || g.cols() < 2 {
        return Err(Error::InvalidGrid("folding needs at least two rows and two columns".into()));
    }
    let weights: Weights = g.to_graph().edges().iter().map(|e| ((e.u, e.v), e.weight)).collect();
    let mut p = Planner { grid: g, weights, folds: Vec::new(), worst: 0.0, balanced: true };
    p.cut((0, g.rows()), (0, g.cols()), 0);
    let mut remaining: Vec<(usize, usize, f64)> = p.weights.iter().map(|(&(u, v), &w)| (u, v, w)).collect();
    remaining.sort_by_key(|e| (e.0, e.1));
    Ok(GridPlan { folds: p.folds, remaining, worst_split: p.worst, balanced: p.balanced })
}

/// Prepares the grid's graph state on qubits `0..rows*cols`. One-row or
/// one-column grids are paths and go through the tree construction.
pub fn prepare_grid(g: &GridGraph) -> Result<Prepared> {
    if g.rows() == 1 || g.cols() == 1 {
        let t = TreeGraph::new(g.to_graph(), 0)?;
        return prepare_tree(&t, true);
    }
    let plan = plan_grid(g)?;
    if !plan.balanced {
        return Err(Error::Invariant("grid cut produced an unbalanced piece".into()));
    }
    let n = g.rows() * g.cols();
    let mut c = Circuit::new(n);
    c.set_stage("unary");
    let heads: Vec<Qubit> = plan.remaining.iter().map(|e| e.0).collect();
    let weights: Vec<f64> = plan.remaining.iter().map(|e| e.2).collect();
    emit_unary(&mut c, &weights, &heads)?;
    c.set_stage("cnot");
    for &(u, v, _) in &plan.remaining {
        c.cnot(u, v);
    }
    c.set_stage("crbs");
    for f in plan.folds.iter().rev() {
        c.push(Gate::CRbs { control: f.control, first: f.first, second: f.second, angle: -f.angle });
    }
    c.clear_stage();
    Ok(Prepared::finish(c, RegisterLayout::new(n)))
}
