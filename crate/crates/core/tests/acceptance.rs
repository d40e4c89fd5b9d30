//! Acceptance suite: one `criterion N: PASS|FAIL` line per checked criterion.

mod common;

use common::{run_lowered, run_prepared};
use hwprep::analysis::{
    ceil_log2, fit_line, layered_cone_bound, light_cone, light_cone_brute_force, marginal_fidelity_lower_bound,
    naive_cone_bound, restrict_to_cone, LightCone,
};
use hwprep::circuit::{lower, Circuit, Gate};
use hwprep::cnot::{bipartite_schedule, chain, fan_in, fan_out, unipotent_cnot, BipartiteSpec};
use hwprep::gf2::{circuit_to_matrix, Gf2Matrix, Gf2Vector};
use hwprep::graph::{parse_graph, parse_tree, plan_grid, prepare_general, prepare_grid, prepare_tree};
use hwprep::hwp::{binomial, prepare_full, prepare_weak, split_register_bound, HwpOptions};
use hwprep::random::{path_tree, random_circuit, random_graph, random_grid, random_hwp, random_tree, random_unipotent, rng};
use hwprep::sim::{fidelity, target_graph_state, target_grid_state, target_hwp_state, BasisKey, DenseState, SparseState};
use hwprep::unary::{compute_angles, unary_encode};
use rand::seq::SliceRandom;
use rand::Rng;
use std::time::{Duration, Instant};

const FIDELITY_TOL: f64 = 1e-9;
const RESIDUE_TOL: f64 = 1e-18;
const AMPLITUDE_TOL: f64 = 1e-10;
const CONE_TOL: f64 = 1e-10;

/// Pinned: lowered depth of the unary encoding is `6 ⌈log₂ l⌉ + 1`.
const UNARY_SLOPE: f64 = 6.0;
const UNARY_INTERCEPT: f64 = 1.0;
/// Pinned: separator-based tree CNOT stage on paths stays below this line.
const TREE_SLOPE: f64 = 60.0;
const TREE_INTERCEPT: f64 = -90.0;
/// Pinned: elementary gates per listed string.
const FULL_SIZE_PER_STRING: f64 = 750.0;
const WEAK_SIZE_PER_ONE: f64 = 80.0;
/// Pinned: arithmetic operations per amplitude of the angle computation.
const ANGLE_OPS_BAND: (f64, f64) = (3.5, 4.0);

fn report(id: &str, pass: bool, detail: impl AsRef<str>) {
    println!("criterion {id}: {} {}", if pass { "PASS" } else { "FAIL" }, detail.as_ref());
    assert!(pass, "criterion {id} failed: {}", detail.as_ref());
}

fn passes(fid: f64, residue: f64) -> bool {
    fid >= 1.0 - FIDELITY_TOL && residue < RESIDUE_TOL
}

#[test]
fn criterion_01_seven_vertex_example() {
    let start = Instant::now();
    let g = parse_graph(include_str!("../../../data/seven_vertex.graph")).unwrap();
    let p = prepare_general(&g).unwrap();
    let mut s = SparseState::zero(p.circuit.num_qubits());
    s.run(&p.circuit);
    let residue = s.ancilla_residue(p.layout.working);
    let state = s.restrict(p.layout.working);
    let expected = [
        ("1100000", 2.0),
        ("0110000", 3.0),
        ("0011000", 7.0),
        ("0100100", 3.0),
        ("0000110", 2.0),
        ("0000101", 1.0),
    ];
    let mut worst = 0.0f64;
    for (bits, w) in expected {
        let a = state.amplitude(&BasisKey::parse(bits).unwrap());
        worst = worst.max((a.re - (w / 18.0f64).sqrt()).abs()).max(a.im.abs());
    }
    let elapsed = start.elapsed();
    let ok = state.support() == 6 && worst < AMPLITUDE_TOL && residue < RESIDUE_TOL && elapsed < Duration::from_secs(1);
    report(
        "1",
        ok,
        format!("support={} max_amp_err={worst:.2e} residue={residue:.2e} time={elapsed:?}", state.support()),
    );
}

#[test]
fn criterion_02_random_graph_sweep() {
    let start = Instant::now();
    let mut r = rng(2);
    let densities = [0.15, 0.3, 0.5, 0.7, 0.9, 1.0];
    let mut worst = (1.0f64, 0.0f64);
    for i in 0..30 {
        let n = 3 + i % 10;
        let g = random_graph(n, densities[i % densities.len()], &mut r).unwrap();
        let target = target_graph_state(&g).unwrap();
        let p = prepare_general(&g).unwrap();
        for o in [run_prepared(&p, &target), run_lowered(&p, &target)] {
            worst = (worst.0.min(o.fidelity), worst.1.max(o.residue));
        }
    }
    let elapsed = start.elapsed();
    let ok = passes(worst.0, worst.1) && elapsed < Duration::from_secs(30);
    report("2", ok, format!("30 graphs min_fidelity={:.12} max_residue={:.2e} time={elapsed:?}", worst.0, worst.1));
}

#[test]
fn criterion_03_trees() {
    let t = parse_tree(include_str!("../../../data/tree13.tree")).unwrap();
    let mut exact = true;
    for opt in [false, true] {
        let p = prepare_tree(&t, opt).unwrap();
        let mut s = SparseState::zero(p.circuit.num_qubits());
        s.run(&p.circuit);
        let state = s.restrict(p.layout.working);
        exact &= state.support() == t.graph().num_edges();
        for e in t.graph().edges() {
            let key = BasisKey::from_ones(t.num_vertices(), [e.u, e.v]);
            let a = state.amplitude(&key);
            exact &= (a.re - e.weight / 13.0f64.sqrt()).abs() < AMPLITUDE_TOL && a.im.abs() < AMPLITUDE_TOL;
        }
    }

    let mut r = rng(3);
    let mut worst = (1.0f64, 0.0f64);
    let mut identical = true;
    for n in [2usize, 3, 4, 7, 9, 12, 16, 23, 31, 40, 50, 64] {
        let t = random_tree(n, &mut r).unwrap();
        let target = target_graph_state(t.graph()).unwrap();
        let naive = prepare_tree(&t, false).unwrap();
        let opt = prepare_tree(&t, true).unwrap();
        for p in [&naive, &opt] {
            let o = run_prepared(p, &target);
            worst = (worst.0.min(o.fidelity), worst.1.max(o.residue));
        }
        let total = naive.circuit.num_qubits().max(opt.circuit.num_qubits());
        let a = circuit_to_matrix(&naive.circuit.stage("cnot"), total).unwrap();
        let b = circuit_to_matrix(&opt.circuit.stage("cnot"), total).unwrap();
        identical &= a == b;
    }
    let ok = exact && passes(worst.0, worst.1) && identical;
    report(
        "3",
        ok,
        format!(
            "13-weight tree exact={exact} random min_fidelity={:.12} max_residue={:.2e} cnot_stages_identical={identical}",
            worst.0, worst.1
        ),
    );
}

#[test]
fn criterion_04_grids() {
    let mut r = rng(4);
    let mut worst = (1.0f64, 0.0f64);
    let mut balanced = true;
    let mut worst_split = 0.0f64;
    for s in 1..=5 {
        for t in 1..=6 {
            if s * t < 2 {
                continue;
            }
            let g = random_grid(s, t, &mut r).unwrap();
            // single rows and columns are paths and need no folding
            if s >= 2 && t >= 2 {
                let plan = plan_grid(&g).unwrap();
                balanced &= plan.balanced;
                worst_split = worst_split.max(plan.worst_split);
            }
            let o = run_prepared(&prepare_grid(&g).unwrap(), &target_grid_state(&g).unwrap());
            worst = (worst.0.min(o.fidelity), worst.1.max(o.residue));
        }
    }
    let ok = passes(worst.0, worst.1) && balanced;
    report(
        "4",
        ok,
        format!(
            "grids up to 5x6 min_fidelity={:.12} max_residue={:.2e} balanced={balanced} worst_split={worst_split:.3}",
            worst.0, worst.1
        ),
    );
}

/// Counts E flags per term at the end of the single-check stage and checks
/// that the first E flag agrees with the D flag.
fn inspect_flags(p: &hwprep::layout::Prepared) -> (bool, bool) {
    let e = p.layout.get("E").unwrap().to_vec();
    let d = p.layout.get("D").unwrap().to_vec();
    let qstar = p.layout.get("qstar").unwrap()[0];
    let at = p.circuit.stage_range("single-check").unwrap().end - 1;
    let (mut multi, mut first_matches) = (false, true);
    let mut s = SparseState::zero(p.circuit.num_qubits());
    s.run_with(&p.circuit, |i, st| {
        if i != at {
            return;
        }
        for (key, _) in st.terms() {
            let set: Vec<usize> = (0..e.len()).filter(|&j| key.get(e[j])).collect();
            let cut: Vec<usize> = (0..d.len()).filter(|&j| key.get(d[j])).collect();
            if set.len() > 1 {
                multi = true;
                first_matches &= !key.get(qstar);
            }
            first_matches &= cut.len() == 1 && set.first() == cut.first();
        }
    });
    (multi, first_matches)
}

#[test]
fn criterion_05_split_register_construction() {
    let start = Instant::now();
    let mut r = rng(5);
    let opts = HwpOptions::default();
    let mut worst = (1.0f64, 0.0f64);
    let mut agreement = 1.0f64;
    let mut multi = false;
    let mut flags_ok = true;
    for (n, k) in [(6, 2), (8, 2), (8, 4)] {
        for _ in 0..10 {
            let spec = random_hwp(n, k, &mut r).unwrap();
            let target = target_hwp_state(&spec).unwrap();
            let full = prepare_full(&spec, &opts).unwrap();
            let weak = prepare_weak(&spec, &opts).unwrap();
            let a = run_prepared(&full, &target);
            let b = run_prepared(&weak, &target);
            worst = (worst.0.min(a.fidelity), worst.1.max(a.residue));
            agreement = agreement.min(fidelity(&a.state, &b.state).unwrap());
            let (m, f) = inspect_flags(&full);
            multi |= m;
            flags_ok &= f;
        }
    }
    // (6, 4) is outside k <= n/2; its complement (6, 2) is covered above.
    let elapsed = start.elapsed();
    let ok = passes(worst.0, worst.1)
        && agreement >= 1.0 - FIDELITY_TOL
        && multi
        && flags_ok
        && elapsed < Duration::from_secs(300);
    report(
        "5",
        ok,
        format!(
            "min_fidelity={:.12} max_residue={:.2e} agreement={agreement:.12} multi_flag_branch={multi} first_flag_matches_cut={flags_ok} time={elapsed:?}",
            worst.0, worst.1
        ),
    );
}

fn random_bits(n: usize, r: &mut impl Rng) -> Gf2Vector {
    let bits: Vec<bool> = (0..n).map(|_| r.gen_bool(0.5)).collect();
    Gf2Vector::from_bits(&bits)
}

#[test]
fn criterion_06_cnot_blocks() {
    let mut chain_ok = true;
    let mut fan_ok = true;
    for n in [1usize, 2, 3, 5, 8, 17, 64, 100, 257, 1024] {
        let m = circuit_to_matrix(&chain(n), n).unwrap();
        chain_ok &= (0..n).all(|i| (0..n).all(|j| m.get(i, j) == (j <= i)));
        if n >= 2 {
            let controls: Vec<usize> = (1..n).collect();
            let fi = circuit_to_matrix(&fan_in(0, &controls), n).unwrap();
            let fo = circuit_to_matrix(&fan_out(0, &controls), n).unwrap();
            let mut want_in = Gf2Matrix::identity(n);
            let mut want_out = Gf2Matrix::identity(n);
            for &c in &controls {
                want_in.set(0, c, true);
                want_out.set(c, 0, true);
            }
            fan_ok &= fi == want_in && fo == want_out;
        }
    }

    let mut r = rng(6);
    let mut bip_ok = true;
    for case in 0..6 {
        let (na, nb, nanc) = [(3, 4, 0), (5, 5, 2), (6, 3, 4), (8, 8, 8), (4, 10, 1), (10, 6, 12)][case];
        let total = na + nb + nanc;
        let mut edges = Vec::new();
        for a in 0..na {
            for b in 0..nb {
                if r.gen_bool(0.5) {
                    edges.push((a, na + b));
                }
            }
        }
        let ancillas: Vec<usize> = (na + nb..total).collect();
        let c = bipartite_schedule(&BipartiteSpec { edges: edges.clone(), ancillas }).unwrap();
        let mut naive = Circuit::new(total);
        for &(a, b) in &edges {
            naive.cnot(a, b);
        }
        let got = circuit_to_matrix(&c, total).unwrap();
        bip_ok &= got == circuit_to_matrix(&naive, total).unwrap();
        for _ in 0..100 {
            let x = random_bits(total, &mut r);
            let y = got.mul_vec(&x).unwrap();
            bip_ok &= (na + nb..total).all(|q| y.get(q) == x.get(q));
        }
    }

    let mut uni_ok = true;
    for _ in 0..50 {
        let m = random_unipotent(8, &mut r);
        let working: Vec<usize> = (0..8).collect();
        let dirty: Vec<usize> = (8..20).collect();
        let c = unipotent_cnot(&m, &working, &dirty).unwrap();
        let got = circuit_to_matrix(&c, 20).unwrap();
        uni_ok &= got.select(&working, &working) == m && got.select(&dirty, &dirty).is_identity();
        uni_ok &= got.select(&dirty, &working).is_zero() && got.select(&working, &dirty).is_zero();
    }
    let ok = chain_ok && fan_ok && bip_ok && uni_ok;
    report("6", ok, format!("chain={chain_ok} fan_in_out={fan_ok} bipartite={bip_ok} unipotent={uni_ok}"));
}

#[test]
fn criterion_07_depth_bounds() {
    let mut fan_ok = true;
    for e in 1..=10 {
        let n = 1usize << e;
        let controls: Vec<usize> = (1..=n).collect();
        fan_ok &= fan_in(0, &controls).depth() == 2 * e + 1;
    }
    let chain_ok = (2..=1024).all(|n| chain(n).depth() as f64 <= 4.0 * ceil_log2(n as f64) + 4.0);

    let mut r = rng(7);
    let points: Vec<(f64, f64)> = (1..=14)
        .map(|e| {
            let l = 1usize << e;
            let amps: Vec<f64> = (0..l).map(|_| r.gen_range(0.1..1.0)).collect();
            let qubits: Vec<usize> = (0..l).collect();
            let depth = lower(&unary_encode(&amps, &qubits).unwrap()).depth();
            (ceil_log2(l as f64), depth as f64)
        })
        .collect();
    let fit = fit_line(&points).unwrap();
    let unary_ok = fit.max_residual == 0.0 && fit.a == UNARY_SLOPE && fit.b == UNARY_INTERCEPT;

    let mut tree_ok = true;
    let mut depths = Vec::new();
    for e in 3..=10 {
        let n = 1usize << e;
        let t = path_tree(n, &mut r).unwrap();
        let naive = lower(&prepare_tree(&t, false).unwrap().circuit).depth();
        let opt = lower(&prepare_tree(&t, true).unwrap().circuit).depth();
        tree_ok &= naive >= n - 1 && opt as f64 <= TREE_SLOPE * e as f64 + TREE_INTERCEPT;
        depths.push((n, naive, opt));
    }
    let ok = fan_ok && chain_ok && unary_ok && tree_ok;
    report(
        "7",
        ok,
        format!(
            "fan_in={fan_ok} chain={chain_ok} unary_fit=(a={}, b={}, residual={}) paths(n,naive,optimized)={depths:?}",
            fit.a, fit.b, fit.max_residual
        ),
    );
}

#[test]
fn criterion_08_size_bounds() {
    let mut r = rng(8);
    let opts = HwpOptions::default();
    let (mut full_ratio, mut weak_ratio) = (0.0f64, 0.0f64);
    for n in 6..=12 {
        for k in [2, 4, 6] {
            if k > n / 2 {
                continue;
            }
            let spec = random_hwp(n, k, &mut r).unwrap();
            let c = binomial(n, k) as f64;
            let full = lower(&prepare_full(&spec, &opts).unwrap().circuit).size().unwrap() as f64;
            let weak = lower(&prepare_weak(&spec, &opts).unwrap().circuit).size().unwrap() as f64;
            full_ratio = full_ratio.max(full / c);
            weak_ratio = weak_ratio.max(weak / (k as f64 * c));
        }
    }
    let mut bound_ok = true;
    for n in 2..=40 {
        for k in (2..=n / 2).step_by(2) {
            bound_ok &= split_register_bound(n, k) <= 4 * binomial(n, k);
        }
    }
    let ok = full_ratio <= FULL_SIZE_PER_STRING && weak_ratio <= WEAK_SIZE_PER_ONE && bound_ok;
    report(
        "8",
        ok,
        format!(
            "full/C={full_ratio:.1} (<= {FULL_SIZE_PER_STRING}) weak/(kC)={weak_ratio:.1} (<= {WEAK_SIZE_PER_ONE}) register_bound={bound_ok}"
        ),
    );
}

/// Random samples shared by both light-cone tests: `(circuit, working)`.
fn cone_samples() -> Vec<(Circuit, Vec<usize>)> {
    let mut r = rng(9);
    let mut out = Vec::new();
    for i in 0..50 {
        let n = 3 + i % 8;
        let c = random_circuit(n, 1 + i % 6, &mut r);
        let mut qs: Vec<usize> = (0..n).collect();
        qs.shuffle(&mut r);
        qs.truncate(1 + i % 3);
        out.push((c, qs));
    }
    out
}

fn deletion_samples() -> Vec<(Circuit, Vec<usize>)> {
    let mut r = rng(90);
    (0..10).map(|i| (random_circuit(8, 2 + i % 3, &mut r), vec![i % 8, (i + 3) % 8])).collect()
}

fn three_gate_cone_circuit() -> Circuit {
    let mut c = Circuit::new(3);
    c.push(Gate::Rbs { first: 0, second: 1, angle: 0.3 });
    c.push(Gate::Ry { target: 2, angle: 0.2 });
    c.push(Gate::Rbs { first: 0, second: 2, angle: 0.5 });
    c.push(Gate::Rbs { first: 1, second: 2, angle: 0.7 });
    c
}

#[test]
fn criterion_09_light_cone() {
    let mut matches = true;
    let mut layered_ok = true;
    for (c, w) in cone_samples() {
        let cone = light_cone(&c, &w).unwrap();
        matches &= cone.vertices == light_cone_brute_force(&c, &w).unwrap();
        layered_ok &= cone.vertices as u128 <= layered_cone_bound(w.len(), cone.depth);
    }
    let mut worst = 1.0f64;
    let mut pruned = 0usize;
    for (c, w) in deletion_samples() {
        let cone = light_cone(&c, &w).unwrap();
        let kept = restrict_to_cone(&c, &cone);
        pruned += c.len() - kept.len();
        let mut a = DenseState::zero(8).unwrap();
        let mut b = DenseState::zero(8).unwrap();
        a.run(&c).unwrap();
        b.run(&kept).unwrap();
        worst = worst.min(marginal_fidelity_lower_bound(&a, &b, &w));
    }
    let ok = matches && layered_ok && worst >= 1.0 - CONE_TOL && pruned > 0;
    report(
        "9",
        ok,
        format!(
            "analyzer_matches_bfs={matches} deletion_fidelity_lb={worst:.12} gates_pruned={pruned} layered_bound={layered_ok}"
        ),
    );
}

/// The cone-size bound `n · 2^D` with `n` working qubits, checked as stated.
/// It does not hold: the three-layer sample alone has 9 cone vertices for
/// `n = 1`, `D = 3`. See the README for the analysis.
#[test]
fn criterion_09c_cone_within_working_times_two_to_depth() {
    let mut samples = cone_samples();
    samples.extend(deletion_samples());
    samples.push((three_gate_cone_circuit(), vec![2]));
    let mut violations = Vec::new();
    for (c, w) in &samples {
        let LightCone { vertices, depth, .. } = light_cone(c, w).unwrap();
        let bound = naive_cone_bound(w.len(), depth);
        if vertices as u128 > bound {
            violations.push((w.len(), depth, vertices, bound));
        }
    }
    report(
        "9c",
        violations.is_empty(),
        format!(
            "{} of {} samples exceed n*2^D; first (n, D, cone, bound) = {:?}",
            violations.len(),
            samples.len(),
            violations.first()
        ),
    );
}

#[test]
fn criterion_10_angle_cost() {
    let mut r = rng(10);
    let mut band = (f64::INFINITY, 0.0f64);
    for e in 4..=16 {
        let l = 1usize << e;
        let amps: Vec<f64> = (0..l).map(|_| r.gen_range(-1.0..1.0)).collect();
        let ratio = compute_angles(&amps).unwrap().ops as f64 / l as f64;
        band = (band.0.min(ratio), band.1.max(ratio));
    }
    let ok = band.0 >= ANGLE_OPS_BAND.0 && band.1 <= ANGLE_OPS_BAND.1;
    report("10", ok, format!("ops/l in [{:.4}, {:.4}] (band {:?})", band.0, band.1, ANGLE_OPS_BAND));
}
