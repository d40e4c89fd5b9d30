//! Synthesis of shallow quantum circuits that prepare graph-structured and
//! Hamming-weight-preserving states, together with the simulators and
//! GF(2) tools used to verify them.
//!
//! The main entry points are [`graph::prepare_general`],
//! [`graph::prepare_tree`], [`graph::prepare_grid`], [`hwp::prepare_weak`]
//! and [`hwp::prepare_full`]. Each returns a [`layout::Prepared`] circuit
//! whose working register is qubits `0..n`; every other qubit starts and
//! ends in |0⟩.

pub mod analysis;
pub mod circuit;
pub mod cnot;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod hwp;
pub mod layout;
pub mod random;
pub mod sim;
pub mod unary;

pub use error::{Error, Result};
