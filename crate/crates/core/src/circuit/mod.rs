//! Gate-level circuit representation.
//!
//! A [`Circuit`] is an ordered gate list over qubits `0..num_qubits`, each
//! gate optionally tagged with the pipeline stage that emitted it. Composite
//! gates (Toffoli, controlled rotations, RBS, multi-controlled X and
//! Hamming-weight checks) are kept symbolic until [`lower`] expands them.

mod control;
mod lower;
mod text;

pub use control::{controlled, emit_controlled};
pub use lower::{lower, lower_to_toffoli, CCRY_SIZE, CRBS_SIZE, CRY_SIZE, RBS_SIZE, TOFFOLI_SIZE};
pub use text::{emit, parse};

use crate::error::{Error, Result};
use smallvec::SmallVec;
use std::ops::Range;
use std::sync::Arc;

pub type Qubit = usize;

/// One gate. Angles are in radians.
///
/// `Ry(θ) = [[cos θ/2, -sin θ/2], [sin θ/2, cos θ/2]]`, `Phase(φ) = diag(1, e^{iφ})`.
/// `Rbs(θ)` on `(first, second)` fixes `|00⟩` and `|11⟩` and maps
/// `|10⟩ -> cos θ |10⟩ + sin θ |01⟩`, `|01⟩ -> -sin θ |10⟩ + cos θ |01⟩`.
/// `Hwc` flips `target` when exactly `weight` of `controls` are one.
#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    X { target: Qubit },
    H { target: Qubit },
    Ry { target: Qubit, angle: f64 },
    Phase { target: Qubit, angle: f64 },
    Cnot { control: Qubit, target: Qubit },
    Toffoli { controls: [Qubit; 2], target: Qubit },
    CRy { control: Qubit, target: Qubit, angle: f64 },
    CCRy { controls: [Qubit; 2], target: Qubit, angle: f64 },
    Rbs { first: Qubit, second: Qubit, angle: f64 },
    CRbs { control: Qubit, first: Qubit, second: Qubit, angle: f64 },
    Mcx { controls: Vec<Qubit>, target: Qubit },
    Hwc { controls: Vec<Qubit>, target: Qubit, weight: usize },
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::X { .. } => "x",
            Gate::H { .. } => "h",
            Gate::Ry { .. } => "ry",
            Gate::Phase { .. } => "p",
            Gate::Cnot { .. } => "cnot",
            Gate::Toffoli { .. } => "ccx",
            Gate::CRy { .. } => "cry",
            Gate::CCRy { .. } => "ccry",
            Gate::Rbs { .. } => "rbs",
            Gate::CRbs { .. } => "crbs",
            Gate::Mcx { .. } => "mcx",
            Gate::Hwc { .. } => "hwc",
        }
    }

    /// All qubits the gate touches, controls first.
    pub fn qubits(&self) -> SmallVec<[Qubit; 4]> {
        let mut q = SmallVec::new();
        match self {
            Gate::X { target } | Gate::H { target } => q.push(*target),
            Gate::Ry { target, .. } | Gate::Phase { target, .. } => q.push(*target),
            Gate::Cnot { control, target } | Gate::CRy { control, target, .. } => {
                q.extend([*control, *target]);
            }
            Gate::Toffoli { controls, target } | Gate::CCRy { controls, target, .. } => {
                q.extend([controls[0], controls[1], *target]);
            }
            Gate::Rbs { first, second, .. } => q.extend([*first, *second]),
            Gate::CRbs { control, first, second, .. } => q.extend([*control, *first, *second]),
            Gate::Mcx { controls, target } | Gate::Hwc { controls, target, .. } => {
                q.extend(controls.iter().copied());
                q.push(*target);
            }
        }
        q
    }

    /// Single-qubit gates and CNOT.
    pub fn is_elementary(&self) -> bool {
        matches!(
            self,
            Gate::X { .. } | Gate::H { .. } | Gate::Ry { .. } | Gate::Phase { .. } | Gate::Cnot { .. }
        )
    }

    /// Gates that map computational basis states to basis states.
    pub fn is_classical(&self) -> bool {
        matches!(
            self,
            Gate::X { .. } | Gate::Cnot { .. } | Gate::Toffoli { .. } | Gate::Mcx { .. } | Gate::Hwc { .. }
        )
    }

    /// Rotation angle, if the gate carries one.
    pub fn angle(&self) -> Option<f64> {
        match self {
            Gate::Ry { angle, .. }
            | Gate::Phase { angle, .. }
            | Gate::CRy { angle, .. }
            | Gate::CCRy { angle, .. }
            | Gate::Rbs { angle, .. }
            | Gate::CRbs { angle, .. } => Some(*angle),
            _ => None,
        }
    }

    pub fn inverse(&self) -> Gate {
        let mut g = self.clone();
        match &mut g {
            Gate::Ry { angle, .. }
            | Gate::Phase { angle, .. }
            | Gate::CRy { angle, .. }
            | Gate::CCRy { angle, .. }
            | Gate::Rbs { angle, .. }
            | Gate::CRbs { angle, .. } => *angle = -*angle,
            _ => {}
        }
        g
    }

    /// Checks distinct qubits, finite angles and bounds against `num_qubits`.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let qs = self.qubits();
        for (i, &a) in qs.iter().enumerate() {
            if a >= num_qubits {
                return Err(Error::InvalidGate(format!("{} uses qubit {a} of {num_qubits}", self.name())));
            }
            if qs[..i].contains(&a) {
                return Err(Error::InvalidGate(format!("{} repeats qubit {a}", self.name())));
            }
        }
        if let Some(a) = self.angle() {
            if !a.is_finite() {
                return Err(Error::InvalidGate(format!("{} has non-finite angle", self.name())));
            }
        }
        Ok(())
    }

    /// Renames every qubit through `f`.
    pub fn map_qubits(&self, f: impl Fn(Qubit) -> Qubit) -> Gate {
        match self {
            Gate::X { target } => Gate::X { target: f(*target) },
            Gate::H { target } => Gate::H { target: f(*target) },
            Gate::Ry { target, angle } => Gate::Ry { target: f(*target), angle: *angle },
            Gate::Phase { target, angle } => Gate::Phase { target: f(*target), angle: *angle },
            Gate::Cnot { control, target } => Gate::Cnot { control: f(*control), target: f(*target) },
            Gate::Toffoli { controls, target } => {
                Gate::Toffoli { controls: [f(controls[0]), f(controls[1])], target: f(*target) }
            }
            Gate::CRy { control, target, angle } => {
                Gate::CRy { control: f(*control), target: f(*target), angle: *angle }
            }
            Gate::CCRy { controls, target, angle } => Gate::CCRy {
                controls: [f(controls[0]), f(controls[1])],
                target: f(*target),
                angle: *angle,
            },
            Gate::Rbs { first, second, angle } => Gate::Rbs { first: f(*first), second: f(*second), angle: *angle },
            Gate::CRbs { control, first, second, angle } => Gate::CRbs {
                control: f(*control),
                first: f(*first),
                second: f(*second),
                angle: *angle,
            },
            Gate::Mcx { controls, target } => {
                Gate::Mcx { controls: controls.iter().map(|&q| f(q)).collect(), target: f(*target) }
            }
            Gate::Hwc { controls, target, weight } => Gate::Hwc {
                controls: controls.iter().map(|&q| f(q)).collect(),
                target: f(*target),
                weight: *weight,
            },
        }
    }
}

/// A gate plus the stage tag of the emitter.
#[derive(Clone, Debug, PartialEq)]
pub struct Op {
    pub gate: Gate,
    pub stage: Option<Arc<str>>,
}

/// An ordered gate list on `num_qubits` qubits.
#[derive(Clone, Debug, Default)]
pub struct Circuit {
    num_qubits: usize,
    ops: Vec<Op>,
    stage: Option<Arc<str>>,
}

impl PartialEq for Circuit {
    fn eq(&self, other: &Self) -> bool {
        self.num_qubits == other.num_qubits && self.ops == other.ops
    }
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit { num_qubits, ops: Vec::new(), stage: None }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.ops.iter().map(|o| &o.gate)
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Adds `n` fresh qubits (initially |0⟩) and returns their indices.
    pub fn alloc(&mut self, n: usize) -> Vec<Qubit> {
        let start = self.num_qubits;
        self.num_qubits += n;
        (start..self.num_qubits).collect()
    }

    /// Grows the register so that qubits `0..n` exist.
    pub fn ensure_qubits(&mut self, n: usize) {
        self.num_qubits = self.num_qubits.max(n);
    }

    /// Tags every subsequently pushed gate with `name`.
    pub fn set_stage(&mut self, name: &str) {
        self.stage = Some(Arc::from(name));
    }

    pub fn clear_stage(&mut self) {
        self.stage = None;
    }

    pub fn current_stage(&self) -> Option<&str> {
        self.stage.as_deref()
    }

    /// Appends a gate; panics on an invalid gate.
    pub fn push(&mut self, gate: Gate) {
        if let Err(e) = gate.validate(self.num_qubits) {
            panic!("{e}");
        }
        self.ops.push(Op { gate, stage: self.stage.clone() });
    }

    /// Appends a gate, reporting invalid gates as errors.
    pub fn try_push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.ops.push(Op { gate, stage: self.stage.clone() });
        Ok(())
    }

    pub(crate) fn push_op(&mut self, op: Op) {
        debug_assert!(op.gate.validate(self.num_qubits).is_ok());
        self.ops.push(op);
    }

    pub fn x(&mut self, q: Qubit) {
        self.push(Gate::X { target: q });
    }

    pub fn cnot(&mut self, control: Qubit, target: Qubit) {
        self.push(Gate::Cnot { control, target });
    }

    pub fn toffoli(&mut self, c0: Qubit, c1: Qubit, target: Qubit) {
        self.push(Gate::Toffoli { controls: [c0, c1], target });
    }

    /// Appends `other`, whose qubits must already exist here. Untagged gates
    /// of `other` take the current stage.
    pub fn append(&mut self, other: &Circuit) {
        self.ensure_qubits(other.num_qubits);
        for op in &other.ops {
            let stage = op.stage.clone().or_else(|| self.stage.clone());
            self.ops.push(Op { gate: op.gate.clone(), stage });
        }
    }

    /// Appends the inverse of `other`.
    pub fn append_inverse(&mut self, other: &Circuit) {
        self.append(&other.inverse());
    }

    /// Reversed gate list with each gate inverted; tags are kept.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            ops: self.ops.iter().rev().map(|o| Op { gate: o.gate.inverse(), stage: o.stage.clone() }).collect(),
            stage: None,
        }
    }

    /// A circuit made of the gates in `range`.
    pub fn slice(&self, range: Range<usize>) -> Circuit {
        Circuit { num_qubits: self.num_qubits, ops: self.ops[range].to_vec(), stage: None }
    }

    /// Index range spanned by the gates tagged `name`.
    pub fn stage_range(&self, name: &str) -> Option<Range<usize>> {
        let first = self.ops.iter().position(|o| o.stage.as_deref() == Some(name))?;
        let last = self.ops.iter().rposition(|o| o.stage.as_deref() == Some(name))?;
        Some(first..last + 1)
    }

    /// Gates tagged `name`, as a circuit on the same register.
    pub fn stage(&self, name: &str) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            ops: self.ops.iter().filter(|o| o.stage.as_deref() == Some(name)).cloned().collect(),
            stage: None,
        }
    }

    /// Distinct stage tags in order of first appearance.
    pub fn stage_names(&self) -> Vec<String> {
        let mut names: Vec<String> = Vec::new();
        for o in &self.ops {
            if let Some(s) = o.stage.as_deref() {
                if !names.iter().any(|n| n == s) {
                    names.push(s.to_string());
                }
            }
        }
        names
    }

    /// ASAP layer (1-based) of every gate; two gates conflict when they share a qubit.
    pub fn layers(&self) -> Vec<usize> {
        let mut level = vec![0usize; self.num_qubits];
        let mut out = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let qs = op.gate.qubits();
            let l = qs.iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
            for &q in &qs {
                level[q] = l;
            }
            out.push(l);
        }
        out
    }

    /// Number of ASAP layers.
    pub fn depth(&self) -> usize {
        let mut level = vec![0usize; self.num_qubits];
        let mut depth = 0;
        for op in &self.ops {
            let qs = op.gate.qubits();
            let l = qs.iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
            for &q in &qs {
                level[q] = l;
            }
            depth = depth.max(l);
        }
        depth
    }

    /// Number of elementary gates; fails if a composite gate remains.
    pub fn size(&self) -> Result<usize> {
        match self.ops.iter().find(|o| !o.gate.is_elementary()) {
            Some(o) => Err(Error::NotLowered(o.gate.name().to_string())),
            None => Ok(self.ops.len()),
        }
    }

    /// Per-kind gate counts, keyed by gate name.
    pub fn gate_counts(&self) -> std::collections::BTreeMap<&'static str, usize> {
        let mut m = std::collections::BTreeMap::new();
        for o in &self.ops {
            *m.entry(o.gate.name()).or_insert(0) += 1;
        }
        m
    }

    /// Qubits touched by at least one gate.
    pub fn used_qubits(&self) -> Vec<Qubit> {
        let mut used = vec![false; self.num_qubits];
        for o in &self.ops {
            for q in o.gate.qubits() {
                used[q] = true;
            }
        }
        (0..self.num_qubits).filter(|&q| used[q]).collect()
    }
}
