//! Unary amplitude encoding: `|0...0⟩ -> Σ α_i |e_i⟩`.
//!
//! An X gate excites the first qubit, then a balanced binary tree of RBS
//! gates splits the excitation: the node covering indices `lo..hi` rotates
//! from qubit `lo` into qubit `lo + (hi - lo) / 2` by the angle whose cosine
//! and sine are the relative weights of the two halves.

use crate::circuit::{Circuit, Gate, Qubit};
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// One RBS of the encoding tree, as indices into the amplitude vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation {
    pub head: usize,
    pub partner: usize,
    pub angle: f64,
    pub level: usize,
}

/// Rotation angles in breadth-first order plus the arithmetic cost of
/// computing them.
#[derive(Clone, Debug, PartialEq)]
pub struct AnglePlan {
    pub len: usize,
    pub rotations: Vec<Rotation>,
    /// Multiplications, additions, square roots and `atan2` calls performed.
    pub ops: u64,
    /// The single amplitude of a length-one vector is negative.
    pub negative_single: bool,
}

/// Computes the tree angles in time linear in `amps.len()`.
pub fn compute_angles(amps: &[f64]) -> Result<AnglePlan> {
    if amps.is_empty() {
        return Err(Error::ZeroVector);
    }
    if amps.iter().any(|a| !a.is_finite()) {
        return Err(Error::InvalidInput("non-finite amplitude".into()));
    }
    let mut ops = 0u64;
    let mut by_level: Vec<Vec<Rotation>> = Vec::new();
    let total = walk(amps, 0, amps.len(), 0, &mut by_level, &mut ops);
    if total == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(AnglePlan {
        len: amps.len(),
        rotations: by_level.into_iter().flatten().collect(),
        ops,
        negative_single: amps.len() == 1 && amps[0] < 0.0,
    })
}

/// Returns the squared norm of `lo..hi` and records the rotations below it.
fn walk(amps: &[f64], lo: usize, hi: usize, level: usize, out: &mut Vec<Vec<Rotation>>, ops: &mut u64) -> f64 {
    if hi - lo == 1 {
        *ops += 1;
        return amps[lo] * amps[lo];
    }
    let mid = lo + (hi - lo) / 2;
    if out.len() <= level {
        out.push(Vec::new());
    }
    let slot = out[level].len();
    out[level].push(Rotation { head: lo, partner: mid, angle: 0.0, level });
    let left = walk(amps, lo, mid, level + 1, out, ops);
    let right = walk(amps, mid, hi, level + 1, out, ops);
    *ops += 1;
    let signed = |sq: f64, lo: usize, hi: usize, ops: &mut u64| {
        if hi - lo == 1 {
            amps[lo]
        } else {
            *ops += 1;
            sq.sqrt()
        }
    };
    let l = signed(left, lo, mid, ops);
    let r = signed(right, mid, hi, ops);
    *ops += 1;
    out[level][slot].angle = r.atan2(l);
    left + right
}

/// Encoding circuit on `qubits` (amplitude `i` lands on `qubits[i]`).
pub fn unary_encode(amps: &[f64], qubits: &[Qubit]) -> Result<Circuit> {
    let mut c = Circuit::new(qubits.iter().max().map_or(0, |m| m + 1));
    emit_unary(&mut c, amps, qubits)?;
    Ok(c)
}

/// Appends the encoding. Zero-angle rotations and zero-weight subtrees emit nothing.
pub fn emit_unary(out: &mut Circuit, amps: &[f64], qubits: &[Qubit]) -> Result<()> {
    if amps.len() != qubits.len() {
        return Err(Error::DimensionMismatch(format!("{} amplitudes for {} qubits", amps.len(), qubits.len())));
    }
    let plan = compute_angles(amps)?;
    emit_plan(out, &plan, amps, qubits);
    Ok(())
}

/// Appends the gates of a precomputed plan.
pub fn emit_plan(out: &mut Circuit, plan: &AnglePlan, amps: &[f64], qubits: &[Qubit]) {
    if plan.negative_single {
        out.push(Gate::Ry { target: qubits[0], angle: -PI });
        return;
    }
    out.x(qubits[0]);
    // A node is reachable when its head carries amplitude; track live heads per range.
    let mut live = vec![false; amps.len()];
    live[0] = true;
    for r in &plan.rotations {
        if !live[r.head] {
            continue;
        }
        let (s, c) = r.angle.sin_cos();
        if r.angle != 0.0 {
            out.push(Gate::Rbs { first: qubits[r.head], second: qubits[r.partner], angle: r.angle });
        }
        live[r.head] = c != 0.0;
        live[r.partner] = s != 0.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{fidelity, target_unary_state, SparseState};

    fn rbs_pairs(c: &Circuit) -> Vec<(usize, usize)> {
        c.gates()
            .filter_map(|g| match g {
                Gate::Rbs { first, second, .. } => Some((*first, *second)),
                _ => None,
            })
            .collect()
    }

    #[test]
    fn eight_qubit_topology() {
        let amps = [1.0; 8];
        let qubits: Vec<_> = (1..=8).collect();
        let c = unary_encode(&amps, &qubits).unwrap();
        assert_eq!(c.ops()[0].gate, Gate::X { target: 1 });
        assert_eq!(rbs_pairs(&c), vec![(1, 5), (1, 3), (5, 7), (1, 2), (3, 4), (5, 6), (7, 8)]);
        assert_eq!(c.depth(), 4);
    }

    #[test]
    fn single_amplitude_is_one_x() {
        let c = unary_encode(&[1.0], &[0]).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.ops()[0].gate, Gate::X { target: 0 });
    }

    #[test]
    fn two_amplitudes_use_quarter_turn() {
        let c = unary_encode(&[1.0, 1.0], &[0, 1]).unwrap();
        assert_eq!(c.ops()[1].gate, Gate::Rbs { first: 0, second: 1, angle: PI / 4.0 });
        let mut s = SparseState::zero(2);
        s.run(&c);
        let t = target_unary_state(&[1.0, 1.0]).unwrap();
        assert!((fidelity(&s, &t).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_norm_is_rejected() {
        assert_eq!(unary_encode(&[0.0, 0.0], &[0, 1]).unwrap_err(), Error::ZeroVector);
    }

    #[test]
    fn zero_branches_emit_nothing() {
        let c = unary_encode(&[1.0, 2.0, 0.0, 0.0], &[0, 1, 2, 3]).unwrap();
        assert_eq!(rbs_pairs(&c), vec![(0, 1)]);
        let c = unary_encode(&[0.0, 0.0, 0.0, 3.0], &[0, 1, 2, 3]).unwrap();
        assert_eq!(rbs_pairs(&c), vec![(0, 2), (2, 3)]);
    }

    #[test]
    fn signs_are_reproduced() {
        let amps = [0.5, -0.25, 0.0, 1.0, -2.0];
        let c = unary_encode(&amps, &[0, 1, 2, 3, 4]).unwrap();
        let mut s = SparseState::zero(5);
        s.run(&c);
        let t = target_unary_state(&amps).unwrap();
        let ip: num_complex::Complex64 =
            s.terms().iter().map(|(k, a)| a * t.amplitude(k).conj()).sum();
        assert!((ip.re - 1.0).abs() < 1e-12, "{ip}");
        let c = unary_encode(&[-1.0], &[0]).unwrap();
        let mut s = SparseState::zero(1);
        s.run(&c);
        assert!((s.terms()[0].1.re + 1.0).abs() < 1e-15);
    }
}
