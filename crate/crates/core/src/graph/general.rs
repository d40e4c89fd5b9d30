//! Graph states of arbitrary graphs through one ancilla per edge.

use super::{Edge, WeightedGraph};
use crate::circuit::{Circuit, Qubit};
use crate::cnot::{emit_fan_in, emit_fan_out};
use crate::error::{Error, Result};
use crate::layout::{Prepared, RegisterLayout};
use crate::unary::emit_unary;

/// Prepares `Σ w_e |e_u + e_v⟩ / ||w||` on qubits `0..n`.
///
/// The edge weights are unary-encoded on `m` ancillas; each ancilla is
/// added onto both endpoints of its edge by two rounds of independent
/// fan-ins; and Toffolis on copies of the endpoints clear the ancillas.
pub fn prepare_general(g: &WeightedGraph) -> Result<Prepared> {
    if g.num_edges() == 0 {
        return Err(Error::EmptyGraph);
    }
    let n = g.num_vertices();
    let mut c = Circuit::new(n);
    let mut layout = RegisterLayout::new(n);
    let anc = c.alloc(g.num_edges());
    layout.add("edge", anc.clone());

    c.set_stage("unary");
    let weights: Vec<f64> = g.edges().iter().map(|e| e.weight).collect();
    emit_unary(&mut c, &weights, &anc)?;

    c.set_stage("cnot");
    let endpoints: [fn(&Edge) -> usize; 2] = [|e| e.u, |e| e.v];
    for endpoint in endpoints {
        let mut groups: Vec<Vec<Qubit>> = vec![Vec::new(); n];
        for (j, e) in g.edges().iter().enumerate() {
            groups[endpoint(e)].push(anc[j]);
        }
        for (v, ys) in groups.iter().enumerate() {
            emit_fan_in(&mut c, v, ys);
        }
    }

    c.set_stage("toffoli");
    let degrees = g.degrees();
    let mut slots: Vec<Vec<Qubit>> = Vec::with_capacity(n);
    let mut copies_all = Vec::new();
    for (v, &d) in degrees.iter().enumerate() {
        let copies = c.alloc(d.saturating_sub(1));
        copies_all.extend(copies.iter().copied());
        let mut s = vec![v];
        s.extend(copies);
        slots.push(s);
    }
    layout.add("copies", copies_all);
    for (v, s) in slots.iter().enumerate() {
        emit_fan_out(&mut c, v, &s[1..]);
    }
    let mut next = vec![0usize; n];
    for (j, e) in g.edges().iter().enumerate() {
        let a = slots[e.u][next[e.u]];
        let b = slots[e.v][next[e.v]];
        next[e.u] += 1;
        next[e.v] += 1;
        c.toffoli(a, b, anc[j]);
    }
    for (v, s) in slots.iter().enumerate() {
        emit_fan_out(&mut c, v, &s[1..]);
    }
    c.clear_stage();
    Ok(Prepared::finish(c, layout))
}
