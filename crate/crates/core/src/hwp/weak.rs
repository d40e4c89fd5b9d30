//! One ancilla per basis string, then CNOTs and multi-controlled X gates.

use super::{check_budget, emit_parallel_mcx, HwpOptions, HwpSpec, ScratchPool};
use crate::circuit::{Circuit, Qubit};
use crate::cnot::emit_bipartite;
use crate::error::Result;
use crate::layout::{Prepared, RegisterLayout};
use crate::unary::emit_unary;

/// Prepares the state on qubits `0..n` with stages `unary`, `cnot` and `mcx`.
///
/// Ancilla `A_x` is unary-encoded with `α_x`; a bipartite CNOT layer adds
/// it onto the `k` ones of `x`; then a `k`-controlled X on fan-out copies of
/// those working qubits clears it. The copies double as the dirty ancillas
/// of the bipartite layer.
pub fn prepare_weak(spec: &HwpSpec, opts: &HwpOptions) -> Result<Prepared> {
    check_budget(spec, opts)?;
    let n = spec.n();
    let mut c = Circuit::new(n);
    let mut layout = RegisterLayout::new(n);
    let terms: Vec<(u64, f64)> = spec.amplitudes().iter().map(|(&x, &a)| (x, a)).collect();
    let anc = c.alloc(terms.len());
    layout.add("A", anc.clone());
    let ones = |x: u64| -> Vec<Qubit> { (0..n).filter(|&q| x >> q & 1 == 1).collect() };

    c.set_stage("unary");
    let amps: Vec<f64> = terms.iter().map(|t| t.1).collect();
    emit_unary(&mut c, &amps, &anc)?;

    let mut pool = ScratchPool::default();
    let edges: Vec<(Qubit, Qubit)> =
        terms.iter().zip(&anc).flat_map(|(&(x, _), &a)| ones(x).into_iter().map(move |q| (a, q))).collect();
    let distinct = edges.iter().map(|e| e.1).collect::<std::collections::BTreeSet<_>>().len();
    let dirty = pool.take(&mut c, edges.len() - distinct);
    c.set_stage("cnot");
    emit_bipartite(&mut c, &edges, &dirty)?;
    pool.give(dirty);

    c.set_stage("mcx");
    let gates: Vec<(Vec<Qubit>, Qubit)> = terms.iter().zip(&anc).map(|(&(x, _), &a)| (ones(x), a)).collect();
    emit_parallel_mcx(&mut c, &mut pool, &gates);
    c.clear_stage();
    layout.add("copies", pool.qubits());
    Ok(Prepared::finish(c, layout))
}
