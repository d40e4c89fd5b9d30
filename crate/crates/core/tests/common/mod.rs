#![allow(dead_code)]

use hwprep::circuit::{lower, Circuit};
use hwprep::layout::Prepared;
use hwprep::sim::{fidelity, SparseState};

/// Working-register fidelity and ancilla residue after running `circuit`.
pub struct Outcome {
    pub state: SparseState,
    pub fidelity: f64,
    pub residue: f64,
}

pub fn run(circuit: &Circuit, working: usize, target: &SparseState) -> Outcome {
    let mut s = SparseState::zero(circuit.num_qubits());
    s.run(circuit);
    let residue = s.ancilla_residue(working);
    let state = s.restrict(working);
    let fidelity = fidelity(&state, target).unwrap();
    Outcome { state, fidelity, residue }
}

pub fn run_prepared(p: &Prepared, target: &SparseState) -> Outcome {
    run(&p.circuit, p.layout.working, target)
}

/// Same as [`run_prepared`] on the fully lowered circuit.
pub fn run_lowered(p: &Prepared, target: &SparseState) -> Outcome {
    run(&lower(&p.circuit), p.layout.working, target)
}

pub fn assert_prepares(p: &Prepared, target: &SparseState) {
    for o in [run_prepared(p, target), run_lowered(p, target)] {
        assert!(o.fidelity >= 1.0 - 1e-9, "fidelity {}", o.fidelity);
        assert!(o.residue < 1e-18, "residue {}", o.residue);
    }
}
