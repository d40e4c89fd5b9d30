use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn hwprep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hwprep")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn synth_then_verify(kind: &str, input: &str, extra: &[&str]) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.txt");
    let input = data(input);
    let mut args = vec!["synth", kind, input.to_str().unwrap(), "-o", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let s = hwprep(&args);
    assert_eq!(code(&s), 0, "{}", String::from_utf8_lossy(&s.stderr));
    assert!(dir.path().join("c.txt.layout.json").exists());
    let v = hwprep(&["verify", out.to_str().unwrap(), input.to_str().unwrap()]);
    assert_eq!(code(&v), 0, "{}", stdout(&v));
    assert!(stdout(&v).contains("fidelity:        1.000000000000"));
}

#[test]
fn every_kind_verifies() {
    synth_then_verify("graph", "seven_vertex.graph", &[]);
    synth_then_verify("graph", "seven_vertex.graph", &["--lower"]);
    synth_then_verify("tree", "tree13.tree", &[]);
    synth_then_verify("tree", "tree13.tree", &["--optimize-tree", "--lower"]);
    synth_then_verify("tree", "two_node.tree", &[]);
    synth_then_verify("grid", "grid3x4.grid", &[]);
    synth_then_verify("hwp", "dicke4_2.hwp", &[]);
    synth_then_verify("hwp-weak", "dicke4_2.hwp", &["--lower"]);
}

#[test]
fn two_node_tree_needs_two_gates() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.txt");
    let s = hwprep(&["synth", "tree", data("two_node.tree").to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(code(&s), 0);
    let gates = fs::read_to_string(&out)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with("qubits") && !l.starts_with("stage") && !l.trim().is_empty())
        .count();
    assert_eq!(gates, 2);
}

#[test]
fn random_synthesis_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = hwprep(&["synth", "hwp", "--random", "6,2", "--seed", "1", "-o", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        fs::read(out).unwrap()
    };
    assert_eq!(run("a.txt"), run("b.txt"));
}

#[test]
fn corrupted_angle_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.txt");
    let input = data("seven_vertex.graph");
    assert_eq!(code(&hwprep(&["synth", "graph", input.to_str().unwrap(), "-o", out.to_str().unwrap()])), 0);
    let text = fs::read_to_string(&out).unwrap();
    let mut done = false;
    let corrupted: Vec<String> = text
        .lines()
        .map(|l| {
            if !done && l.starts_with("rbs ") {
                done = true;
                let mut parts: Vec<&str> = l.split_whitespace().collect();
                parts[3] = "0.1";
                parts.join(" ")
            } else {
                l.to_string()
            }
        })
        .collect();
    assert!(done);
    fs::write(&out, corrupted.join("\n") + "\n").unwrap();
    let v = hwprep(&["verify", out.to_str().unwrap(), input.to_str().unwrap()]);
    assert_eq!(code(&v), 1);
    assert!(stdout(&v).contains("FAIL"));
}

#[test]
fn bad_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.csv");
    assert_eq!(code(&hwprep(&["bench", "chain", "--grid", "", "-o", out.to_str().unwrap()])), 2);
    assert_eq!(code(&hwprep(&["bench", "nope", "--grid", "8", "-o", out.to_str().unwrap()])), 2);
    let bad = dir.path().join("bad.graph");
    fs::write(&bad, "graph 3 1\n1 4 1.0\n").unwrap();
    let o = hwprep(&["synth", "graph", bad.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let odd = hwprep(&["synth", "hwp", "--random", "6,3", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&odd), 2);
}

#[test]
fn budget_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.txt");
    let o = hwprep(&["synth", "hwp", "--random", "8,4", "--max-ancillas", "10", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    let input = data("seven_vertex.graph");
    assert_eq!(code(&hwprep(&["synth", "graph", input.to_str().unwrap(), "-o", out.to_str().unwrap()])), 0);
    let v = hwprep(&["verify", out.to_str().unwrap(), input.to_str().unwrap(), "--max-support", "1"]);
    assert_eq!(code(&v), 3);
}

#[test]
fn bench_writes_reproducible_csv() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let o = hwprep(&["bench", "tree-optimized", "--grid", "2^3..2^6", "--seed", "4", "-o", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).contains("fit: depth"));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("family,x,k,scale,qubits,ancillas,depth,size\n"));
    assert_eq!(text.lines().count(), 5);
}
