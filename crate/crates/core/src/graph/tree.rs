//! Graph states of trees without edge ancillas.

use super::separator::separator_in;
use super::TreeGraph;
use crate::circuit::{Circuit, Qubit};
use crate::cnot::{emit_fan_in, emit_unipotent};
use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::layout::{Prepared, RegisterLayout};
use crate::unary::emit_unary;
use std::collections::{HashMap, HashSet};

/// Pieces at most this large use the plain bottom-up CNOT order.
const BASE_PIECE: usize = 8;

/// Prepares the tree's graph state on qubits `0..n`.
///
/// The non-root vertices are unary-encoded with their parent-edge weights,
/// turning `|e_v⟩` into `|e_v + e_parent(v)⟩` needs a CNOT from every vertex
/// to its parent applied from the root downwards. With `optimize` that CNOT
/// stage is built as the inverse of a separator-based subtree-sum circuit of
/// logarithmic depth.
pub fn prepare_tree(t: &TreeGraph, optimize: bool) -> Result<Prepared> {
    let n = t.num_vertices();
    if n < 2 {
        return Err(Error::EmptyGraph);
    }
    let mut c = Circuit::new(n);
    let layout = RegisterLayout::new(n);
    let nonroot: Vec<Qubit> = (0..n).filter(|&v| v != t.root()).collect();
    let weights: Vec<f64> = nonroot.iter().map(|&v| t.parent_weight(v)).collect();
    c.set_stage("unary");
    emit_unary(&mut c, &weights, &nonroot)?;
    c.set_stage("cnot");
    let stage = if optimize { subtree_sum_circuit(t).inverse() } else { naive_cnot_stage(t) };
    c.append(&stage);
    c.clear_stage();
    Ok(Prepared::finish(c, layout))
}

/// CNOT from each vertex to its parent, by increasing distance from the root.
pub fn naive_cnot_stage(t: &TreeGraph) -> Circuit {
    let n = t.num_vertices();
    let mut c = Circuit::new(n);
    for h in 1..=t.max_height() {
        for v in (0..n).filter(|&v| t.height(v) == h) {
            c.cnot(v, t.parent(v).expect("non-root"));
        }
    }
    c
}

/// Circuit after which every vertex holds the parity of its subtree.
pub fn subtree_sum_circuit(t: &TreeGraph) -> Circuit {
    let n = t.num_vertices();
    let parent: Vec<Option<usize>> = (0..n).map(|v| t.parent(v)).collect();
    let mut c = Circuit::new(n);
    emit_sums(&mut c, &parent, t.bfs_order().to_vec());
    c
}

fn emit_naive_sums(out: &mut Circuit, parent: &[Option<usize>], piece: &[usize], inside: &HashSet<usize>) {
    for &v in piece.iter().rev() {
        if let Some(p) = parent[v].filter(|p| inside.contains(p)) {
            out.cnot(v, p);
        }
    }
}

/// Subtree sums within `piece` (a connected vertex set listed top-down).
fn emit_sums(out: &mut Circuit, parent: &[Option<usize>], piece: Vec<usize>) {
    let size = piece.len();
    if size <= 1 {
        return;
    }
    let inside: HashSet<usize> = piece.iter().copied().collect();
    if size <= BASE_PIECE {
        emit_naive_sums(out, parent, &piece, &inside);
        return;
    }
    let r = (size as f64).sqrt().ceil() as usize;
    let sep = separator_in(&piece, parent, r);
    let in_sep: HashSet<usize> = sep.iter().copied().collect();
    let local_parent = |v: usize| parent[v].filter(|p| inside.contains(p));

    // nearest proper ancestor inside the separator
    let mut up: HashMap<usize, Option<usize>> = HashMap::new();
    for &v in &piece {
        let a = local_parent(v).and_then(|p| if in_sep.contains(&p) { Some(p) } else { up[&p] });
        up.insert(v, a);
    }

    // each separator vertex collects the rest of its private region
    let mut region: HashMap<usize, Vec<usize>> = HashMap::new();
    for &v in &piece {
        if !in_sep.contains(&v) {
            if let Some(a) = up[&v] {
                region.entry(a).or_default().push(v);
            }
        }
    }
    for &s in &sep {
        if let Some(vs) = region.get(&s) {
            emit_fan_in(out, s, vs);
        }
    }

    // subtree sums on the tree induced on the separator
    let k = sep.len();
    let index: HashMap<usize, usize> = sep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut m = Gf2Matrix::identity(k);
    for (i, &u) in sep.iter().enumerate() {
        let mut a = up[&u];
        while let Some(x) = a {
            m.set(index[&x], i, true);
            a = up[&x];
        }
    }
    let dirty: Vec<Qubit> = piece.iter().copied().filter(|v| !in_sep.contains(v)).collect();
    if dirty.len() >= k {
        emit_unipotent(out, &m, &sep, &dirty).expect("separator map is unipotent");
    } else {
        for &u in sep.iter().rev() {
            if let Some(a) = up[&u] {
                out.cnot(u, a);
            }
        }
    }

    // separator vertices feed parents outside the separator
    let mut feeds: Vec<(usize, Vec<usize>)> = Vec::new();
    for &u in &sep {
        if let Some(p) = local_parent(u).filter(|p| !in_sep.contains(p)) {
            match feeds.iter_mut().find(|(q, _)| *q == p) {
                Some((_, us)) => us.push(u),
                None => feeds.push((p, vec![u])),
            }
        }
    }
    for (p, us) in &feeds {
        emit_fan_in(out, *p, us);
    }

    // remaining pieces
    let mut pieces: Vec<Vec<usize>> = Vec::new();
    let mut piece_of: HashMap<usize, usize> = HashMap::new();
    for &v in &piece {
        if in_sep.contains(&v) {
            continue;
        }
        match local_parent(v).filter(|p| !in_sep.contains(p)) {
            Some(p) => {
                let i = piece_of[&p];
                piece_of.insert(v, i);
                pieces[i].push(v);
            }
            None => {
                piece_of.insert(v, pieces.len());
                pieces.push(vec![v]);
            }
        }
    }
    for p in pieces {
        emit_sums(out, parent, p);
    }
}
