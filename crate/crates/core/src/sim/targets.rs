use super::key::BasisKey;
use super::sparse::SparseState;
use crate::error::{Error, Result};
use crate::graph::{GridGraph, WeightedGraph};
use crate::hwp::HwpSpec;

/// `Σ w_e |e_u + e_v⟩` over the edges, normalized, on `n` qubits.
pub fn target_graph_state(g: &WeightedGraph) -> Result<SparseState> {
    if g.edges().is_empty() {
        return Err(Error::EmptyGraph);
    }
    let n = g.num_vertices();
    let norm = g.norm();
    Ok(SparseState::from_real(
        n,
        g.edges().iter().map(|e| (BasisKey::from_ones(n, [e.u, e.v]), e.weight / norm)),
    ))
}

/// Graph state of the grid, vertex `(i, j)` on qubit `i * cols + j`.
pub fn target_grid_state(g: &GridGraph) -> Result<SparseState> {
    target_graph_state(&g.to_graph())
}

/// `Σ α_x |x⟩`, normalized.
pub fn target_hwp_state(spec: &HwpSpec) -> Result<SparseState> {
    let n = spec.n();
    let norm: f64 = spec.amplitudes().values().map(|a| a * a).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(SparseState::from_real(n, spec.amplitudes().iter().map(|(x, a)| (spec.key(*x), a / norm))))
}

/// `Σ α_i |e_i⟩` on `amps.len()` qubits, normalized.
pub fn target_unary_state(amps: &[f64]) -> Result<SparseState> {
    let norm: f64 = amps.iter().map(|a| a * a).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let n = amps.len();
    Ok(SparseState::from_real(n, amps.iter().enumerate().map(|(i, a)| (BasisKey::from_ones(n, [i]), a / norm))))
}
