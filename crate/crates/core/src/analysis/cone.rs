//! Light cones of layered circuits.
//!
//! The circuit is viewed as a layered directed graph with one vertex per
//! qubit per layer boundary (`depth + 1` boundaries). A gate in layer `t`
//! connects each of its qubits at boundary `t - 1` to each of its qubits at
//! boundary `t`; idle qubits connect to themselves. The light cone is the
//! set of vertices from which some working qubit at the last boundary is
//! reachable. Gates outside it cannot influence the working qubits.

use crate::circuit::{Circuit, Qubit};
use crate::error::{Error, Result};
use crate::sim::{Complex64, DenseState};
use std::collections::VecDeque;

/// Result of a light-cone count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LightCone {
    /// Number of layers of the circuit.
    pub depth: usize,
    /// Number of graph vertices inside the cone.
    pub vertices: usize,
    /// Cone vertices per boundary, from the input boundary to the output.
    pub per_boundary: Vec<usize>,
    /// Indices of the gates that touch the cone.
    pub gates: Vec<usize>,
    /// Number of continuous parameters among those gates.
    pub parameters: usize,
}

fn check_width(c: &Circuit) -> Result<()> {
    match c.gates().find(|g| g.qubits().len() > 2) {
        Some(g) => Err(Error::NotLowered(g.name().to_string())),
        None => Ok(()),
    }
}

/// Counts the cone of `working` by sweeping the layers backwards.
pub fn light_cone(c: &Circuit, working: &[Qubit]) -> Result<LightCone> {
    check_width(c)?;
    let n = c.num_qubits();
    let layers = c.layers();
    let depth = layers.iter().copied().max().unwrap_or(0);
    let mut by_layer: Vec<Vec<usize>> = vec![Vec::new(); depth + 1];
    for (i, &l) in layers.iter().enumerate() {
        by_layer[l].push(i);
    }
    let mut inside = vec![false; n];
    for &w in working {
        if w >= n {
            return Err(Error::InvalidInput(format!("working qubit {w} outside a {n}-qubit circuit")));
        }
        inside[w] = true;
    }
    let mut per_boundary = vec![0usize; depth + 1];
    per_boundary[depth] = inside.iter().filter(|&&b| b).count();
    let mut gates = Vec::new();
    for t in (1..=depth).rev() {
        let mut prev = inside.clone();
        for &i in &by_layer[t] {
            let qs = c.ops()[i].gate.qubits();
            if qs.iter().any(|&q| inside[q]) {
                gates.push(i);
                for &q in &qs {
                    prev[q] = true;
                }
            }
        }
        inside = prev;
        per_boundary[t - 1] = inside.iter().filter(|&&b| b).count();
    }
    gates.sort_unstable();
    let parameters = gates.iter().filter(|&&i| c.ops()[i].gate.angle().is_some()).count();
    Ok(LightCone { depth, vertices: per_boundary.iter().sum(), per_boundary, gates, parameters })
}

/// Counts the cone by explicit reverse breadth-first search over the
/// layered graph; an independent check of [`light_cone`].
pub fn light_cone_brute_force(c: &Circuit, working: &[Qubit]) -> Result<usize> {
    check_width(c)?;
    let n = c.num_qubits();
    let layers = c.layers();
    let depth = layers.iter().copied().max().unwrap_or(0);
    let id = |t: usize, q: usize| t * n + q;
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); (depth + 1) * n];
    let mut busy = vec![vec![false; n]; depth + 1];
    for (op, &t) in c.ops().iter().zip(&layers) {
        let qs = op.gate.qubits();
        for &a in &qs {
            busy[t][a] = true;
            for &b in &qs {
                preds[id(t, b)].push(id(t - 1, a));
            }
        }
    }
    for t in 1..=depth {
        for q in 0..n {
            if !busy[t][q] {
                preds[id(t, q)].push(id(t - 1, q));
            }
        }
    }
    let mut seen = vec![false; (depth + 1) * n];
    let mut queue: VecDeque<usize> = working.iter().map(|&w| id(depth, w)).collect();
    for &v in &queue {
        seen[v] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &p in &preds[v] {
            if !seen[p] {
                seen[p] = true;
                queue.push_back(p);
            }
        }
    }
    Ok(seen.iter().filter(|&&s| s).count())
}

/// The circuit restricted to the gates of `cone`.
pub fn restrict_to_cone(c: &Circuit, cone: &LightCone) -> Circuit {
    let mut out = Circuit::new(c.num_qubits());
    for &i in &cone.gates {
        out.push(c.ops()[i].gate.clone());
    }
    out
}

/// `n · 2^D`: the vertex count suggested by in-degree two per layer.
pub fn naive_cone_bound(working: usize, depth: usize) -> u128 {
    (working as u128) << depth.min(100)
}

/// `n · (2^(D+1) - 1)`: boundary `D - t` holds at most `n · 2^t` cone vertices.
pub fn layered_cone_bound(working: usize, depth: usize) -> u128 {
    working as u128 * ((1u128 << (depth + 1).min(100)) - 1)
}

/// Reduced density matrix of `working` (row index bit `j` is `working[j]`).
pub fn reduced_density(state: &DenseState, working: &[Qubit]) -> Vec<Vec<Complex64>> {
    let n = state.num_qubits();
    let dim = 1usize << working.len();
    let bit = |q: Qubit| n - 1 - q;
    let work_mask: usize = working.iter().map(|&q| 1usize << bit(q)).sum();
    let project = |idx: usize| -> usize {
        working.iter().enumerate().map(|(j, &q)| ((idx >> bit(q)) & 1) << j).sum()
    };
    let amps = state.amplitudes();
    // group amplitudes by the environment part of the index
    let mut by_env: std::collections::HashMap<usize, Vec<(usize, Complex64)>> = std::collections::HashMap::new();
    for (idx, &a) in amps.iter().enumerate() {
        if a.norm_sqr() > 0.0 {
            by_env.entry(idx & !work_mask).or_default().push((project(idx), a));
        }
    }
    let mut rho = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for terms in by_env.values() {
        for &(i, a) in terms {
            for &(j, b) in terms {
                rho[i][j] += a * b.conj();
            }
        }
    }
    rho
}

/// Lower bound on the fidelity of two reduced states, from
/// `1 - F ≤ ½‖ρ - σ‖₁ ≤ ½ √d ‖ρ - σ‖_F`.
pub fn marginal_fidelity_lower_bound(a: &DenseState, b: &DenseState, working: &[Qubit]) -> f64 {
    let ra = reduced_density(a, working);
    let rb = reduced_density(b, working);
    let dim = ra.len() as f64;
    let frob: f64 = ra
        .iter()
        .zip(&rb)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).norm_sqr()))
        .sum::<f64>()
        .sqrt();
    1.0 - 0.5 * dim.sqrt() * frob
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;

    /// Two-qubit block on (0,1) and a one-qubit gate on 2, then (0,2), then (1,2).
    fn three_gate_cone_circuit() -> Circuit {
        let mut c = Circuit::new(3);
        c.push(Gate::Rbs { first: 0, second: 1, angle: 0.3 });
        c.push(Gate::Ry { target: 2, angle: 0.2 });
        c.push(Gate::Rbs { first: 0, second: 2, angle: 0.5 });
        c.push(Gate::Rbs { first: 1, second: 2, angle: 0.7 });
        c
    }

    #[test]
    fn cone_of_last_qubit_after_three_layers() {
        let c = three_gate_cone_circuit();
        let cone = light_cone(&c, &[2]).unwrap();
        assert_eq!(cone.depth, 3);
        assert_eq!(cone.per_boundary, vec![3, 3, 2, 1]);
        assert_eq!(cone.vertices, 9);
        assert_eq!(light_cone_brute_force(&c, &[2]).unwrap(), 9);
        assert_eq!(cone.parameters, 4);
    }

    #[test]
    fn empty_circuit_cone_is_the_working_register() {
        let c = Circuit::new(5);
        let cone = light_cone(&c, &[0, 1, 2]).unwrap();
        assert_eq!(cone.vertices, 3);
        assert_eq!(light_cone_brute_force(&c, &[0, 1, 2]).unwrap(), 3);
    }

    #[test]
    fn composite_gates_are_rejected() {
        let mut c = Circuit::new(3);
        c.toffoli(0, 1, 2);
        assert!(light_cone(&c, &[0]).is_err());
    }
}
