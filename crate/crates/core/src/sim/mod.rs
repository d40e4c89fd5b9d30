//! State-vector simulation.
//!
//! [`SparseState`] stores only the non-zero amplitudes of a state and is the
//! workhorse for verifying synthesized circuits on hundreds of qubits.
//! [`DenseState`] is a small, independent full state vector used as an
//! oracle for gate semantics and lowering.

mod dense;
mod key;
mod sparse;
mod targets;

pub use dense::{DenseState, MAX_DENSE_QUBITS};
pub use key::BasisKey;
pub use sparse::{fidelity, SparseState, PRUNE_THRESHOLD};
pub use targets::{target_graph_state, target_grid_state, target_hwp_state, target_unary_state};

pub use num_complex::Complex64;
