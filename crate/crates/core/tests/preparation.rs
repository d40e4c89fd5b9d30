mod common;

use common::{assert_prepares, run_prepared};
use hwprep::graph::{prepare_general, prepare_grid, prepare_tree, WeightedGraph};
use hwprep::hwp::{prepare_full, prepare_weak, HwpOptions, HwpSpec};
use hwprep::random::{random_graph, random_grid, random_hwp, random_tree, rng};
use hwprep::sim::{target_graph_state, target_grid_state, target_hwp_state};

#[test]
fn general_graphs() {
    let mut r = rng(11);
    for n in 3..9 {
        let g = random_graph(n, 0.5, &mut r).unwrap();
        assert_prepares(&prepare_general(&g).unwrap(), &target_graph_state(&g).unwrap());
    }
}

#[test]
fn trees_both_modes() {
    let mut r = rng(12);
    for n in [2, 3, 5, 9, 17, 30] {
        let t = random_tree(n, &mut r).unwrap();
        let target = target_graph_state(t.graph()).unwrap();
        for opt in [false, true] {
            assert_prepares(&prepare_tree(&t, opt).unwrap(), &target);
        }
    }
}

#[test]
fn grids() {
    let mut r = rng(13);
    for (s, t) in [(2, 2), (2, 3), (3, 3), (3, 4), (1, 5), (4, 1)] {
        let g = random_grid(s, t, &mut r).unwrap();
        assert_prepares(&prepare_grid(&g).unwrap(), &target_grid_state(&g).unwrap());
    }
}

#[test]
fn hwp_both_constructions() {
    let mut r = rng(14);
    for (n, k) in [(4, 2), (6, 2), (6, 3)] {
        let spec = random_hwp(n, k, &mut r).unwrap();
        let target = target_hwp_state(&spec).unwrap();
        let opts = HwpOptions { odd_k: true, ..HwpOptions::default() };
        assert_prepares(&prepare_weak(&spec, &opts).unwrap(), &target);
        let o = run_prepared(&prepare_full(&spec, &opts).unwrap(), &target);
        assert!(o.fidelity > 1.0 - 1e-9 && o.residue < 1e-18, "n={n} k={k} f={} r={}", o.fidelity, o.residue);
    }
}

#[test]
fn single_edge_graph() {
    let g = WeightedGraph::new(2, [(0, 1, 1.0)]).unwrap();
    assert_prepares(&prepare_general(&g).unwrap(), &target_graph_state(&g).unwrap());
    let spec = HwpSpec::dicke(4, 2).unwrap();
    assert_prepares(&prepare_full(&spec, &HwpOptions::default()).unwrap(), &target_hwp_state(&spec).unwrap());
}
