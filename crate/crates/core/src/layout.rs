//! Named qubit registers of a synthesized circuit.

use crate::circuit::{Circuit, Qubit};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Register {
    pub name: String,
    pub qubits: Vec<Qubit>,
}

/// Register map. The working register always occupies qubits `0..working`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterLayout {
    pub working: usize,
    pub total: usize,
    pub registers: Vec<Register>,
}

impl RegisterLayout {
    pub fn new(working: usize) -> Self {
        RegisterLayout {
            working,
            total: working,
            registers: vec![Register { name: "working".into(), qubits: (0..working).collect() }],
        }
    }

    pub fn add(&mut self, name: impl Into<String>, qubits: Vec<Qubit>) {
        self.registers.push(Register { name: name.into(), qubits });
    }

    pub fn get(&self, name: &str) -> Option<&[Qubit]> {
        self.registers.iter().find(|r| r.name == name).map(|r| r.qubits.as_slice())
    }

    pub fn ancillas(&self) -> usize {
        self.total - self.working
    }
}

/// A synthesized circuit and its register map.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub circuit: Circuit,
    pub layout: RegisterLayout,
}

impl Prepared {
    pub(crate) fn finish(circuit: Circuit, mut layout: RegisterLayout) -> Self {
        layout.total = circuit.num_qubits();
        Prepared { circuit, layout }
    }
}
