//! Adding a control qubit to a whole circuit.
//!
//! The control is copied onto one scratch qubit per gate slot of the widest
//! layer with a logarithmic-depth fan-out, every gate becomes its controlled
//! version driven by its own copy, and the fan-out is repeated to clear the
//! copies.

use super::{Circuit, Gate, Qubit};
use crate::cnot::emit_fan_out;
use std::f64::consts::FRAC_PI_2;

/// Returns the circuit applying `c` when `control` is one. `control` must
/// not be used by `c`; scratch qubits are appended after the register.
pub fn controlled(c: &Circuit, control: Qubit) -> Circuit {
    let mut out = Circuit::new(c.num_qubits().max(control + 1));
    emit_controlled(&mut out, c, control);
    out
}

/// Appends the controlled version of `body` to `out`; scratch is allocated in `out`.
pub fn emit_controlled(out: &mut Circuit, body: &Circuit, control: Qubit) {
    assert!(
        body.gates().all(|g| !g.qubits().contains(&control)),
        "control qubit {control} is used by the body"
    );
    out.ensure_qubits(body.num_qubits().max(control + 1));
    let layers = body.layers();
    let depth = layers.iter().copied().max().unwrap_or(0);
    let mut per_layer = vec![0usize; depth + 1];
    for &l in &layers {
        per_layer[l] += 1;
    }
    let width = per_layer.iter().copied().max().unwrap_or(0);
    if width == 0 {
        return;
    }
    let mut copies = vec![control];
    copies.extend(out.alloc(width - 1));
    emit_fan_out(out, control, &copies[1..]);
    let mut slot = vec![0usize; depth + 1];
    for (op, &l) in body.ops().iter().zip(&layers) {
        let ctl = copies[slot[l]];
        slot[l] += 1;
        let saved = out.stage.clone();
        if op.stage.is_some() {
            out.stage = op.stage.clone();
        }
        controlled_gate(out, &op.gate, ctl);
        out.stage = saved;
    }
    emit_fan_out(out, control, &copies[1..]);
}

fn controlled_gate(out: &mut Circuit, g: &Gate, ctl: Qubit) {
    match g {
        Gate::X { target } => out.cnot(ctl, *target),
        Gate::H { target } => {
            out.push(Gate::CRy { control: ctl, target: *target, angle: FRAC_PI_2 });
            out.cnot(ctl, *target);
        }
        Gate::Ry { target, angle } => out.push(Gate::CRy { control: ctl, target: *target, angle: *angle }),
        Gate::Phase { target, angle } => {
            out.push(Gate::Phase { target: ctl, angle: angle / 2.0 });
            out.push(Gate::Phase { target: *target, angle: angle / 2.0 });
            out.cnot(ctl, *target);
            out.push(Gate::Phase { target: *target, angle: -angle / 2.0 });
            out.cnot(ctl, *target);
        }
        Gate::Cnot { control, target } => out.toffoli(ctl, *control, *target),
        Gate::Toffoli { controls, target } => {
            out.push(Gate::Mcx { controls: vec![ctl, controls[0], controls[1]], target: *target })
        }
        Gate::CRy { control, target, angle } => {
            out.push(Gate::CCRy { controls: [ctl, *control], target: *target, angle: *angle })
        }
        Gate::CCRy { controls, target, angle } => {
            let s = out.alloc(1)[0];
            out.toffoli(ctl, controls[0], s);
            out.push(Gate::CCRy { controls: [s, controls[1]], target: *target, angle: *angle });
            out.toffoli(ctl, controls[0], s);
        }
        Gate::Rbs { first, second, angle } => {
            out.push(Gate::CRbs { control: ctl, first: *first, second: *second, angle: *angle })
        }
        Gate::CRbs { control, first, second, angle } => {
            let s = out.alloc(1)[0];
            out.toffoli(ctl, *control, s);
            out.push(Gate::CRbs { control: s, first: *first, second: *second, angle: *angle });
            out.toffoli(ctl, *control, s);
        }
        Gate::Mcx { controls, target } => {
            let mut cs = vec![ctl];
            cs.extend(controls.iter().copied());
            out.push(Gate::Mcx { controls: cs, target: *target });
        }
        Gate::Hwc { controls, target, weight } => {
            let s = out.alloc(1)[0];
            let check = Gate::Hwc { controls: controls.clone(), target: s, weight: *weight };
            out.push(check.clone());
            out.toffoli(ctl, s, *target);
            out.push(check);
        }
    }
}
