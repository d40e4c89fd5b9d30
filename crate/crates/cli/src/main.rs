//! `hwprep`: synthesize, verify and benchmark state-preparation circuits.
//!
//! Exit codes: 0 success, 1 verification failed, 2 bad input (parse or
//! validation error), 3 budget exceeded, 4 internal invariant failure.

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hwprep::analysis::{scaling_run, write_csv, Family};
use hwprep::circuit::{emit, lower, parse, Circuit};
use hwprep::graph::{parse_graph, parse_grid, parse_tree, prepare_general, prepare_grid, prepare_tree};
use hwprep::hwp::{prepare_full, prepare_weak, HwpOptions, HwpSpec, DEFAULT_MAX_ANCILLAS};
use hwprep::layout::Prepared;
use hwprep::random::{random_graph, random_grid, random_hwp, random_tree, rng};
use hwprep::sim::{fidelity, target_graph_state, target_grid_state, target_hwp_state, SparseState};
use hwprep::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hwprep", version, about = "Shallow state-preparation circuits for graph and Hamming-weight-preserving states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a preparation circuit; writes the circuit and a `.layout.json` sidecar.
    Synth(SynthArgs),
    /// Simulate a circuit and compare its working register with a target state.
    Verify(VerifyArgs),
    /// Measure depth and size over a parameter grid and write CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Graph,
    Tree,
    Grid,
    Hwp,
    HwpWeak,
}

#[derive(Args)]
struct SynthArgs {
    kind: Kind,
    /// Input file; omit when using --random.
    input: Option<PathBuf>,
    /// Random instance instead of a file: `N` (graph, tree), `R,C` (grid) or `N,K` (hwp).
    #[arg(long, value_name = "PARAMS")]
    random: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_MAX_ANCILLAS)]
    max_ancillas: usize,
    /// Use the separator-based CNOT stage for trees.
    #[arg(long)]
    optimize_tree: bool,
    /// Allow odd Hamming weight.
    #[arg(long)]
    odd_k: bool,
    /// Write the circuit lowered to elementary gates.
    #[arg(long)]
    lower: bool,
}

#[derive(Args)]
struct VerifyArgs {
    circuit: PathBuf,
    /// Target description: a graph, tree, grid or hwp file.
    target: PathBuf,
    /// Required fidelity is `1 - tolerance`; also the bound on ancilla residue.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Abort with exit code 3 if the simulated support grows beyond this.
    #[arg(long, default_value_t = 1 << 22)]
    max_support: usize,
}

#[derive(Args)]
struct BenchArgs {
    family: String,
    /// Instances: `8,16,32`, `2^3..2^11`, `4..12`, or `n:k` pairs such as `6:2,8:4`.
    #[arg(long, default_value = "")]
    grid: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    out: PathBuf,
    /// Add a wall-clock column (makes the output run-dependent).
    #[arg(long)]
    timings: bool,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let code = match err.downcast_ref::<Error>() {
            Some(Error::BudgetExceeded { .. }) => 3,
            Some(
                Error::Parse { .. }
                | Error::InvalidInput(_)
                | Error::InvalidHwp(_)
                | Error::InvalidGate(_)
                | Error::EmptyGraph
                | Error::NotATree(_)
                | Error::InvalidGrid(_)
                | Error::OddK(_)
                | Error::ZeroVector
                | Error::DimensionMismatch(_)
                | Error::Io(_),
            ) => 2,
            Some(_) => 4,
            None if err.downcast_ref::<std::io::Error>().is_some() => 2,
            None => 4,
        };
        Failure { code, err }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn numbers(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::InvalidInput(format!("bad parameter list `{s}`")).into())
}

fn synth(a: &SynthArgs) -> Result<Prepared, Failure> {
    let opts = HwpOptions { max_ancillas: a.max_ancillas, odd_k: a.odd_k };
    let mut r = rng(a.seed);
    let text = match (&a.input, &a.random) {
        (Some(p), None) => Some(read(p)?),
        (None, Some(_)) => None,
        _ => return Err(Error::InvalidInput("give exactly one of an input file or --random".into()).into()),
    };
    let params = a.random.as_deref().map(numbers).transpose()?;
    let want = |len: usize| -> Result<&Vec<usize>, Failure> {
        match &params {
            Some(p) if p.len() == len => Ok(p),
            _ => Err(Error::InvalidInput(format!("--random expects {len} number(s)")).into()),
        }
    };
    Ok(match a.kind {
        Kind::Graph => {
            let g = match &text {
                Some(t) => parse_graph(t)?,
                None => random_graph(want(1)?[0], 0.5, &mut r)?,
            };
            prepare_general(&g)?
        }
        Kind::Tree => {
            let t = match &text {
                Some(t) => parse_tree(t)?,
                None => random_tree(want(1)?[0], &mut r)?,
            };
            prepare_tree(&t, a.optimize_tree)?
        }
        Kind::Grid => {
            let g = match &text {
                Some(t) => parse_grid(t)?,
                None => {
                    let p = want(2)?;
                    random_grid(p[0], p[1], &mut r)?
                }
            };
            prepare_grid(&g)?
        }
        Kind::Hwp | Kind::HwpWeak => {
            let spec = match &text {
                Some(t) => HwpSpec::parse(t)?,
                None => {
                    let p = want(2)?;
                    random_hwp(p[0], p[1], &mut r)?
                }
            };
            if matches!(a.kind, Kind::Hwp) {
                prepare_full(&spec, &opts)?
            } else {
                prepare_weak(&spec, &opts)?
            }
        }
    })
}

fn cmd_synth(a: &SynthArgs) -> Result<(), Failure> {
    let mut p = synth(a)?;
    let lowered = lower(&p.circuit);
    if a.lower {
        p.circuit = lowered.clone();
        p.layout.total = lowered.num_qubits();
    }
    fs::write(&a.out, emit(&p.circuit)).with_context(|| format!("writing {}", a.out.display()))?;
    let sidecar = layout_path(&a.out);
    let json = serde_json::to_string_pretty(&p.layout).map_err(|e| anyhow!(e))?;
    fs::write(&sidecar, json + "\n").with_context(|| format!("writing {}", sidecar.display()))?;
    println!("working qubits: {}", p.layout.working);
    println!("ancillas:       {}", p.layout.ancillas());
    println!("lowered qubits: {}", lowered.num_qubits());
    println!("depth:          {}", lowered.depth());
    println!("size:           {}", lowered.size()?);
    println!("stages:         {}", p.circuit.stage_names().join(" "));
    Ok(())
}

fn layout_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".layout.json");
    PathBuf::from(s)
}

/// Target state from a description file, chosen by its header keyword.
fn target_state(text: &str) -> Result<SparseState, Failure> {
    let head = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
        .unwrap_or("");
    Ok(match head {
        "graph" | "tree" => target_graph_state(&parse_graph(text)?)?,
        "grid" => target_grid_state(&parse_grid(text)?)?,
        "hwp" => target_hwp_state(&HwpSpec::parse(text)?)?,
        other => {
            return Err(Error::Parse { line: 1, token: other.to_string(), msg: "unknown target kind".into() }.into())
        }
    })
}

fn cmd_verify(a: &VerifyArgs) -> Result<bool, Failure> {
    if !(a.tolerance > 0.0 && a.tolerance < 1.0) {
        return Err(Error::InvalidInput("tolerance must lie in (0, 1)".into()).into());
    }
    let circuit: Circuit = parse(&read(&a.circuit)?)?;
    let target = target_state(&read(&a.target)?)?;
    let working = target.num_qubits();
    if circuit.num_qubits() < working {
        return Err(Error::DimensionMismatch(format!(
            "circuit has {} qubits, target needs {working}",
            circuit.num_qubits()
        ))
        .into());
    }
    let mut state = SparseState::zero(circuit.num_qubits());
    let mut peak = 0;
    for g in circuit.gates() {
        state.apply(g);
        peak = peak.max(state.support());
        if peak > a.max_support {
            return Err(Error::BudgetExceeded { needed: peak, budget: a.max_support }.into());
        }
    }
    let residue = state.ancilla_residue(working);
    let f = fidelity(&state.restrict(working), &target)?;
    println!("fidelity:        {f:.12}");
    println!("ancilla residue: {residue:.3e}");
    println!("support:         {}", state.support());
    let ok = f >= 1.0 - a.tolerance && residue < a.tolerance;
    println!("result:          {}", if ok { "pass" } else { "FAIL" });
    Ok(ok)
}

/// Parses `8,16`, `2^3..2^11`, `4..12` or `n:k` lists into `(x, k)` pairs.
fn parse_bench_grid(s: &str) -> Result<Vec<(usize, usize)>, Failure> {
    let bad = || -> Failure { Error::InvalidInput(format!("bad grid `{s}`")).into() };
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::InvalidInput("empty parameter grid".into()).into());
    }
    if let Some((lo, hi)) = s.split_once("..") {
        let pow = |t: &str| t.trim().strip_prefix("2^").map(|e| e.parse::<u32>());
        return match (pow(lo), pow(hi)) {
            (Some(Ok(a)), Some(Ok(b))) if a <= b && b < 63 => Ok((a..=b).map(|e| (1usize << e, 0)).collect()),
            (None, None) => {
                let a: usize = lo.trim().parse().map_err(|_| bad())?;
                let b: usize = hi.trim().parse().map_err(|_| bad())?;
                Ok((a..=b).map(|x| (x, 0)).collect())
            }
            _ => Err(bad()),
        };
    }
    s.split(',')
        .map(|t| {
            let t = t.trim();
            match t.split_once(':') {
                Some((x, k)) => Ok((x.parse().map_err(|_| bad())?, k.parse().map_err(|_| bad())?)),
                None => Ok((t.parse().map_err(|_| bad())?, 0)),
            }
        })
        .collect()
}

fn cmd_bench(a: &BenchArgs) -> Result<(), Failure> {
    let family: Family = a.family.parse()?;
    let grid = parse_bench_grid(&a.grid)?;
    let report = scaling_run(family, &grid, a.seed)?;
    let file = fs::File::create(&a.out).with_context(|| format!("writing {}", a.out.display()))?;
    write_csv(&report, file, a.timings)?;
    println!("instances: {}", report.rows.len());
    if let Some(fit) = report.fit {
        println!("fit: depth ≈ {:.4} · ⌈log2 scale⌉ + {:.4} (max residual {:.4})", fit.a, fit.b, fit.max_residual);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Synth(a) => cmd_synth(a).map(|_| true),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
