//! Expansion of composite gates into single-qubit gates and CNOTs.
//!
//! Lowering runs in two passes. The classical pass rewrites Hamming-weight
//! checks and multi-controlled X gates into X, CNOT and Toffoli gates,
//! allocating fresh scratch qubits at the end of the register. The second
//! pass expands Toffoli gates, controlled rotations and RBS gates into
//! fixed elementary templates.

use super::{Circuit, Gate, Op, Qubit};
use std::f64::consts::FRAC_PI_4;

/// Elementary gates per lowered Toffoli.
pub const TOFFOLI_SIZE: usize = 15;
/// Elementary gates per lowered doubly controlled Ry.
pub const CCRY_SIZE: usize = 8;
/// Elementary gates per lowered controlled Ry.
pub const CRY_SIZE: usize = 4;
/// Elementary gates per lowered RBS.
pub const RBS_SIZE: usize = 6;
/// Elementary gates per lowered controlled RBS.
pub const CRBS_SIZE: usize = 10;

/// Lowers every composite gate. Scratch qubits, if any, are appended after
/// the original register and are returned to |0⟩.
pub fn lower(c: &Circuit) -> Circuit {
    let classical = lower_to_toffoli(c);
    let mut out = Circuit::new(classical.num_qubits());
    for op in classical.ops() {
        out.stage = op.stage.clone();
        expand_elementary(&mut out, &op.gate);
    }
    out.stage = None;
    out
}

/// Rewrites `Hwc` and `Mcx` gates into X, CNOT and Toffoli gates.
pub fn lower_to_toffoli(c: &Circuit) -> Circuit {
    let mut out = Circuit::new(c.num_qubits());
    for op in c.ops() {
        out.stage = op.stage.clone();
        match &op.gate {
            Gate::Mcx { controls, target } => emit_mcx(&mut out, controls, *target),
            Gate::Hwc { controls, target, weight } => emit_hwc(&mut out, controls, *target, *weight),
            g => out.push_op(Op { gate: g.clone(), stage: op.stage.clone() }),
        }
    }
    out.stage = None;
    out
}

fn expand_elementary(out: &mut Circuit, g: &Gate) {
    match *g {
        Gate::Toffoli { controls: [a, b], target } => toffoli(out, a, b, target),
        Gate::CRy { control, target, angle } => cry(out, control, target, angle),
        Gate::CCRy { controls: [a, b], target, angle } => ccry(out, a, b, target, angle),
        Gate::Rbs { first, second, angle } => {
            out.cnot(second, first);
            cry(out, first, second, 2.0 * angle);
            out.cnot(second, first);
        }
        Gate::CRbs { control, first, second, angle } => {
            out.cnot(second, first);
            ccry(out, control, first, second, 2.0 * angle);
            out.cnot(second, first);
        }
        Gate::Mcx { .. } | Gate::Hwc { .. } => unreachable!("classical pass runs first"),
        _ => out.push(g.clone()),
    }
}

fn phase(out: &mut Circuit, q: Qubit, angle: f64) {
    out.push(Gate::Phase { target: q, angle });
}

fn ry(out: &mut Circuit, q: Qubit, angle: f64) {
    out.push(Gate::Ry { target: q, angle });
}

/// Toffoli as H on the target around the seven-phase CCZ network, the same
/// unitary as the controlled-V cascade `CV(b,t) CX(a,b) CV†(b,t) CX(a,b) CV(a,t)`.
fn toffoli(out: &mut Circuit, a: Qubit, b: Qubit, t: Qubit) {
    out.push(Gate::H { target: t });
    out.cnot(b, t);
    phase(out, t, -FRAC_PI_4);
    out.cnot(a, t);
    phase(out, t, FRAC_PI_4);
    out.cnot(b, t);
    phase(out, t, -FRAC_PI_4);
    out.cnot(a, t);
    phase(out, b, FRAC_PI_4);
    phase(out, t, FRAC_PI_4);
    out.push(Gate::H { target: t });
    out.cnot(a, b);
    phase(out, a, FRAC_PI_4);
    phase(out, b, -FRAC_PI_4);
    out.cnot(a, b);
}

fn cry(out: &mut Circuit, c: Qubit, t: Qubit, angle: f64) {
    ry(out, t, angle / 2.0);
    out.cnot(c, t);
    ry(out, t, -angle / 2.0);
    out.cnot(c, t);
}

fn ccry(out: &mut Circuit, a: Qubit, b: Qubit, t: Qubit, angle: f64) {
    let q = angle / 4.0;
    out.cnot(b, t);
    ry(out, t, -q);
    out.cnot(a, t);
    ry(out, t, q);
    out.cnot(b, t);
    ry(out, t, -q);
    out.cnot(a, t);
    ry(out, t, q);
}

/// Multi-controlled X with one freshly allocated borrowed qubit.
pub(crate) fn emit_mcx(out: &mut Circuit, controls: &[Qubit], target: Qubit) {
    match controls.len() {
        0 => out.x(target),
        1 => out.cnot(controls[0], target),
        2 => out.toffoli(controls[0], controls[1], target),
        _ => {
            let anc = out.alloc(1)[0];
            mcx_one_borrowed(out, controls, target, anc);
        }
    }
}

/// Splits the controls in two halves; each half's gate borrows qubits of the
/// other half, and `anc` carries the first half's conjunction.
fn mcx_one_borrowed(out: &mut Circuit, controls: &[Qubit], target: Qubit, anc: Qubit) {
    let m1 = controls.len().div_ceil(2);
    let (g1, g2) = controls.split_at(m1);
    let mut g2a = g2.to_vec();
    g2a.push(anc);
    let mut borrow_a = g2.to_vec();
    borrow_a.push(target);
    for _ in 0..2 {
        mcx_with_dirty(out, g1, anc, &borrow_a);
        mcx_with_dirty(out, &g2a, target, g1);
    }
}

/// `m`-controlled X from `4(m - 2)` Toffolis using `m - 2` dirty qubits.
fn mcx_with_dirty(out: &mut Circuit, c: &[Qubit], t: Qubit, dirty: &[Qubit]) {
    let m = c.len();
    match m {
        0 => return out.x(t),
        1 => return out.cnot(c[0], t),
        2 => return out.toffoli(c[0], c[1], t),
        _ => {}
    }
    assert!(dirty.len() >= m - 2, "need {} borrowed qubits, have {}", m - 2, dirty.len());
    let a = &dirty[..m - 2];
    let down = |out: &mut Circuit| {
        for j in (1..=m - 3).rev() {
            out.toffoli(c[j + 1], a[j - 1], a[j]);
        }
    };
    let up = |out: &mut Circuit| {
        for j in 1..=m - 3 {
            out.toffoli(c[j + 1], a[j - 1], a[j]);
        }
    };
    out.toffoli(c[m - 1], a[m - 3], t);
    down(out);
    out.toffoli(c[0], c[1], a[0]);
    up(out);
    out.toffoli(c[m - 1], a[m - 3], t);
    down(out);
    out.toffoli(c[0], c[1], a[0]);
    up(out);
}

/// Hamming-weight check: an adder tree sums the controls into a binary
/// register, the register is compared with `weight`, and the tree is undone.
pub(crate) fn emit_hwc(out: &mut Circuit, controls: &[Qubit], target: Qubit, weight: usize) {
    let n = controls.len();
    if weight > n {
        return;
    }
    if n == 0 {
        out.x(target);
        return;
    }
    let mut compute = Vec::new();
    let sum = adder_tree(out, &mut compute, controls);
    let flips: Vec<Qubit> = sum.iter().enumerate().filter(|(j, _)| weight >> j & 1 == 0).map(|(_, &q)| q).collect();
    for g in &compute {
        out.push(g.clone());
    }
    for &q in &flips {
        out.x(q);
    }
    emit_mcx(out, &sum, target);
    for &q in &flips {
        out.x(q);
    }
    for g in compute.iter().rev() {
        out.push(g.clone());
    }
}

/// Returns the little-endian bits of the sum of `leaves`.
fn adder_tree(out: &mut Circuit, gates: &mut Vec<Gate>, leaves: &[Qubit]) -> Vec<Qubit> {
    if leaves.len() == 1 {
        return vec![leaves[0]];
    }
    let mid = leaves.len() / 2;
    let left = adder_tree(out, gates, &leaves[..mid]);
    let right = adder_tree(out, gates, &leaves[mid..]);
    add_into_fresh(out, gates, &left, &right)
}

/// Out-of-place ripple-carry sum into a fresh register; carries stay as garbage.
fn add_into_fresh(out: &mut Circuit, gates: &mut Vec<Gate>, a: &[Qubit], b: &[Qubit]) -> Vec<Qubit> {
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let w = a.len();
    let sum = out.alloc(w + 1);
    let carries = out.alloc(w.saturating_sub(1));
    let cnot = |control, target| Gate::Cnot { control, target };
    let tof = |x, y, target| Gate::Toffoli { controls: [x, y], target };
    for i in 0..w {
        let carry_in = if i == 0 { None } else { Some(carries[i - 1]) };
        let carry_out = if i + 1 == w { sum[w] } else { carries[i] };
        gates.push(cnot(a[i], sum[i]));
        match (b.get(i), carry_in) {
            (Some(&bi), Some(ci)) => {
                gates.push(cnot(bi, sum[i]));
                gates.push(tof(a[i], bi, carry_out));
                gates.push(tof(ci, sum[i], carry_out));
                gates.push(cnot(ci, sum[i]));
            }
            (Some(&bi), None) => {
                gates.push(cnot(bi, sum[i]));
                gates.push(tof(a[i], bi, carry_out));
            }
            (None, Some(ci)) => {
                gates.push(tof(a[i], ci, carry_out));
                gates.push(cnot(ci, sum[i]));
            }
            (None, None) => {}
        }
    }
    sum
}
