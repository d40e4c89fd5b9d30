//! Seeded random instances for tests and benchmarks.

use crate::circuit::{Circuit, Gate};
use crate::error::Result;
use crate::gf2::Gf2Matrix;
use crate::graph::{GridGraph, TreeGraph, WeightedGraph};
use crate::hwp::{weight_k_masks, HwpSpec};
use rand::seq::SliceRandom;
use rand::Rng;
pub use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

/// The generator used everywhere a seed is accepted.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn weight(rng: &mut impl Rng) -> f64 {
    rng.gen_range(0.1..2.0)
}

/// Graph with each pair present with probability `density`; at least one edge.
pub fn random_graph(n: usize, density: f64, rng: &mut impl Rng) -> Result<WeightedGraph> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density.clamp(0.0, 1.0)) {
                edges.push((u, v, weight(rng)));
            }
        }
    }
    if edges.is_empty() && n >= 2 {
        let u = rng.gen_range(0..n - 1);
        edges.push((u, rng.gen_range(u + 1..n), weight(rng)));
    }
    WeightedGraph::new(n, edges)
}

/// Uniform random recursive tree rooted at a random vertex.
pub fn random_tree(n: usize, rng: &mut impl Rng) -> Result<TreeGraph> {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let edges: Vec<(usize, usize, f64)> =
        (1..n).map(|i| (labels[rng.gen_range(0..i)], labels[i], weight(rng))).collect();
    let root = rng.gen_range(0..n);
    TreeGraph::new(WeightedGraph::new(n, edges)?, root)
}

/// Path `0 - 1 - ... - n-1` rooted at 0.
pub fn path_tree(n: usize, rng: &mut impl Rng) -> Result<TreeGraph> {
    let edges: Vec<(usize, usize, f64)> = (1..n).map(|i| (i - 1, i, weight(rng))).collect();
    TreeGraph::new(WeightedGraph::new(n, edges)?, 0)
}

pub fn random_grid(rows: usize, cols: usize, rng: &mut impl Rng) -> Result<GridGraph> {
    GridGraph::from_fn(rows, cols, |_, _, _| weight(rng))
}

/// Signed random amplitudes on every weight-`k` string.
pub fn random_hwp(n: usize, k: usize, rng: &mut impl Rng) -> Result<HwpSpec> {
    let terms: Vec<(u64, f64)> = weight_k_masks(n, k)
        .into_iter()
        .map(|x| (x, rng.gen_range(0.1..1.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 }))
        .collect();
    HwpSpec::new(n, k, terms)
}

/// `depth` rounds, each applying random one- and two-qubit gates to a random
/// pairing of the qubits.
pub fn random_circuit(n: usize, depth: usize, rng: &mut impl Rng) -> Circuit {
    let mut c = Circuit::new(n);
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..depth {
        order.shuffle(rng);
        let mut i = 0;
        while i < n {
            let angle = rng.gen_range(-3.0..3.0);
            if i + 1 < n && rng.gen_bool(0.6) {
                let (a, b) = (order[i], order[i + 1]);
                c.push(match rng.gen_range(0..3) {
                    0 => Gate::Cnot { control: a, target: b },
                    1 => Gate::CRy { control: a, target: b, angle },
                    _ => Gate::Rbs { first: a, second: b, angle },
                });
                i += 2;
            } else {
                let q = order[i];
                c.push(match rng.gen_range(0..3) {
                    0 => Gate::H { target: q },
                    1 => Gate::X { target: q },
                    _ => Gate::Ry { target: q, angle },
                });
                i += 1;
            }
        }
    }
    c
}

/// Random CNOT circuit on `n` qubits.
pub fn random_cnot_circuit(n: usize, gates: usize, rng: &mut impl Rng) -> Circuit {
    let mut c = Circuit::new(n);
    for _ in 0..gates {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        c.cnot(a, b);
    }
    c
}

/// `P L P⁻¹` with `L` random unit lower-triangular and `P` a random invertible matrix.
pub fn random_unipotent(n: usize, rng: &mut impl Rng) -> Gf2Matrix {
    let mut l = Gf2Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            if rng.gen_bool(0.5) {
                l.set(i, j, true);
            }
        }
    }
    let p = loop {
        let mut p = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if rng.gen_bool(0.5) {
                    p.set(i, j, true);
                }
            }
        }
        if let Ok(inv) = p.inverse() {
            break (p, inv);
        }
    };
    p.0.mul(&l).and_then(|m| m.mul(&p.1)).expect("square matrices")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let a = random_graph(8, 0.4, &mut rng(3)).unwrap();
        let b = random_graph(8, 0.4, &mut rng(3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(random_circuit(5, 4, &mut rng(1)), random_circuit(5, 4, &mut rng(1)));
    }

    #[test]
    fn random_unipotent_is_unipotent() {
        let mut r = rng(9);
        for _ in 0..10 {
            assert!(random_unipotent(8, &mut r).is_unipotent());
        }
    }

    #[test]
    fn random_tree_is_connected() {
        let t = random_tree(40, &mut rng(5)).unwrap();
        assert_eq!(t.bfs_order().len(), 40);
    }
}
