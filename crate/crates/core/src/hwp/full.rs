//! HWP preparation with `O(C(n, k))` gates by splitting each string in two.
//!
//! Every weight-`k` string `x` is cut after its `⌈k/2⌉`-th one at position
//! `i`, giving a prefix `a` and a suffix `b` that each carry about half the
//! ones. The basis ancilla `A_x` is moved onto one-hot pattern qubits for
//! `a` and `b` in the split register `B_i` and onto `D_i`; the short
//! patterns are expanded into the full string inside `C_i`, copied into the
//! working register, and `C_i` is cleared by Toffolis conditioned on `D_i`.
//! Finally `D` is cleared by recomputing `i` from the working qubits:
//! `E_i` flags prefixes with `⌈k/2⌉` ones, and `q*` tells whether that
//! flag is unique. If it is not, a second prefix check over `E` isolates its
//! first one into `F`.

use super::{check_budget, emit_parallel_mcx, emit_pattern_transfer, split_index, weight_k_masks};
use super::{HwpOptions, HwpSpec, ScratchPool};
use crate::circuit::{emit_controlled, Circuit, Gate, Qubit};
use crate::cnot::{emit_bipartite, emit_fan_in, emit_fan_out};
use crate::error::Result;
use crate::layout::{Prepared, RegisterLayout};
use crate::unary::emit_unary;
use std::collections::{BTreeSet, HashMap};

/// Stage tags of [`prepare_full`], in emission order.
pub const FULL_STAGES: [&str; 12] = [
    "unary",
    "split",
    "clear-a",
    "halves",
    "assemble",
    "clear-c",
    "copies",
    "prefix-check",
    "single-check",
    "clear-d-single",
    "clear-d-multi",
    "uncompute",
];

/// One cut position: pattern qubits for prefixes and suffixes plus the
/// string register they expand into.
struct Split {
    /// 1-based cut position.
    position: usize,
    prefix: Vec<Qubit>,
    prefix_ones: Vec<Vec<usize>>,
    prefix_index: HashMap<u64, usize>,
    suffix: Vec<Qubit>,
    suffix_ones: Vec<Vec<usize>>,
    suffix_index: HashMap<u64, usize>,
    string: Vec<Qubit>,
}

fn ones(mask: u64, offset: usize) -> Vec<usize> {
    (0..64).filter(|&q| mask >> q & 1 == 1).map(|q| q + offset).collect()
}

/// Prepares the state on qubits `0..n`. Stages are tagged with [`FULL_STAGES`].
pub fn prepare_full(spec: &HwpSpec, opts: &HwpOptions) -> Result<Prepared> {
    check_budget(spec, opts)?;
    let (head_ones, tail_ones) = spec.halves(opts.odd_k)?;
    let (n, k) = (spec.n(), spec.k());
    let cuts = n - k + 1;
    let mut c = Circuit::new(n);
    let mut layout = RegisterLayout::new(n);

    let terms: Vec<(u64, f64)> = spec.amplitudes().iter().map(|(&x, &a)| (x, a)).collect();
    let basis = c.alloc(terms.len());
    layout.add("A", basis.clone());

    let mut splits = Vec::with_capacity(cuts);
    for position in head_ones..=n - tail_ones {
        let heads = weight_k_masks(position, head_ones);
        let tails = if tail_ones == 0 { Vec::new() } else { weight_k_masks(n - position, tail_ones) };
        let b = c.alloc(heads.len() + tails.len());
        layout.add(format!("B{position}"), b.clone());
        splits.push(Split {
            position,
            prefix: b[..heads.len()].to_vec(),
            prefix_ones: heads.iter().map(|&m| ones(m, 0)).collect(),
            prefix_index: heads.iter().enumerate().map(|(j, &m)| (m, j)).collect(),
            suffix: b[heads.len()..].to_vec(),
            suffix_ones: tails.iter().map(|&m| ones(m, position)).collect(),
            suffix_index: tails.iter().enumerate().map(|(j, &m)| (m, j)).collect(),
            string: Vec::new(),
        });
    }
    for s in &mut splits {
        s.string = c.alloc(n);
        layout.add(format!("C{}", s.position), s.string.clone());
    }
    let cut_flag = c.alloc(cuts);
    let prefix_flag = c.alloc(cuts);
    let first_flag = c.alloc(cuts);
    let unique = c.alloc(1)[0];
    layout.add("D", cut_flag.clone());
    layout.add("E", prefix_flag.clone());
    layout.add("F", first_flag.clone());
    layout.add("qstar", vec![unique]);
    let mut pool = ScratchPool::default();

    c.set_stage("unary");
    let amps: Vec<f64> = terms.iter().map(|t| t.1).collect();
    emit_unary(&mut c, &amps, &basis)?;

    // basis ancilla -> prefix pattern, suffix pattern and cut flag
    let mut edges = Vec::with_capacity(3 * terms.len());
    let mut pattern_pairs = Vec::with_capacity(terms.len());
    for (&(x, _), &a) in terms.iter().zip(&basis) {
        let cut = split_index(x, n, k, opts.odd_k)?;
        let s = &splits[cut.position - head_ones];
        let mut controls = vec![s.prefix[s.prefix_index[&cut.prefix_mask]]];
        if tail_ones > 0 {
            controls.push(s.suffix[s.suffix_index[&cut.suffix_mask]]);
        }
        for &q in &controls {
            edges.push((a, q));
        }
        edges.push((a, cut_flag[cut.position - head_ones]));
        pattern_pairs.push((controls, a));
    }
    let distinct = edges.iter().map(|e| e.1).collect::<BTreeSet<_>>().len();
    let dirty = pool.take(&mut c, edges.len() - distinct);
    c.set_stage("split");
    emit_bipartite(&mut c, &edges, &dirty)?;
    pool.give(dirty);

    c.set_stage("clear-a");
    emit_parallel_mcx(&mut c, &mut pool, &pattern_pairs);

    c.set_stage("halves");
    for s in &splits {
        emit_pattern_transfer(&mut c, &mut pool, &s.prefix, &s.prefix_ones, &s.string)?;
        emit_pattern_transfer(&mut c, &mut pool, &s.suffix, &s.suffix_ones, &s.string)?;
    }

    c.set_stage("assemble");
    for q in 0..n {
        let sources: Vec<Qubit> = splits.iter().map(|s| s.string[q]).collect();
        emit_fan_in(&mut c, q, &sources);
    }

    c.set_stage("clear-c");
    let flags = &cut_flag;
    let clears: Vec<(Vec<Qubit>, Qubit)> = splits
        .iter()
        .enumerate()
        .flat_map(|(e, s)| (0..n).map(move |q| (vec![q, flags[e]], s.string[q])))
        .collect();
    emit_parallel_mcx(&mut c, &mut pool, &clears);

    // copy e holds the first head_ones + e working qubits
    let lens: Vec<usize> = (0..cuts).map(|e| head_ones + e).collect();
    let copies: Vec<Vec<Qubit>> = lens.iter().map(|&len| pool.take(&mut c, len)).collect();
    let mut check = Circuit::new(c.num_qubits());
    for q in 0..n {
        let targets: Vec<Qubit> = copies.iter().filter_map(|cp| cp.get(q).copied()).collect();
        emit_fan_out(&mut check, q, &targets);
    }
    let copy_len = check.len();
    for e in 0..cuts {
        check.push(Gate::Hwc { controls: copies[e].clone(), target: prefix_flag[e], weight: head_ones });
    }
    let prefix_len = check.len();
    check.push(Gate::Hwc { controls: prefix_flag.clone(), target: unique, weight: 1 });
    for (stage, range) in [("copies", 0..copy_len), ("prefix-check", copy_len..prefix_len), ("single-check", prefix_len..check.len())]
    {
        c.set_stage(stage);
        c.append(&check.slice(range));
    }

    c.set_stage("clear-d-single");
    let mut body = Circuit::new(c.num_qubits());
    for e in 0..cuts {
        body.cnot(prefix_flag[e], cut_flag[e]);
    }
    emit_controlled(&mut c, &body, unique);

    c.set_stage("clear-d-multi");
    let flag_copies: Vec<Vec<Qubit>> = (0..cuts).map(|e| pool.take(&mut c, e + 1)).collect();
    let mut isolate = Circuit::new(c.num_qubits());
    for t in 0..cuts {
        let targets: Vec<Qubit> = (t..cuts).map(|e| flag_copies[e][t]).collect();
        emit_fan_out(&mut isolate, prefix_flag[t], &targets);
    }
    for e in 0..cuts {
        isolate.push(Gate::Hwc { controls: flag_copies[e].clone(), target: first_flag[e], weight: 1 });
    }
    let mut body = Circuit::new(c.num_qubits());
    body.append(&isolate);
    for e in 0..cuts {
        body.cnot(first_flag[e], cut_flag[e]);
    }
    body.append_inverse(&isolate);
    c.x(unique);
    emit_controlled(&mut c, &body, unique);
    c.x(unique);
    for fc in flag_copies {
        pool.give(fc);
    }

    c.set_stage("uncompute");
    c.append_inverse(&check);
    for cp in copies {
        pool.give(cp);
    }
    c.clear_stage();
    layout.add("scratch", pool.qubits());
    Ok(Prepared::finish(c, layout))
}
