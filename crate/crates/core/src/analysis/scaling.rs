//! Depth and size measurements over instance grids, with logarithmic fits.

use crate::circuit::{lower, Circuit};
use crate::cnot::{chain, fan_in};
use crate::error::{Error, Result};
use crate::graph::{prepare_general, prepare_grid, prepare_tree};
use crate::hwp::{binomial, prepare_full, prepare_weak, HwpOptions};
use crate::random::{path_tree, random_graph, random_grid, random_hwp, rng};
use crate::unary::unary_encode;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

/// Circuit families the harness can measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Prefix-XOR chain on `x` qubits.
    Chain,
    /// Fan-in of `x - 1` controls into one target.
    FanIn,
    /// Unary encoding of `x` random amplitudes.
    Unary,
    /// General graph on `x` vertices, edge density one half.
    Graph,
    /// Path of `x` vertices, plain CNOT order.
    TreeNaive,
    /// Path of `x` vertices, separator-based CNOT stage.
    TreeOptimized,
    /// Both tree modes side by side; the fit uses the optimized rows.
    Tree,
    /// `x × x` grid.
    Grid,
    /// Split-register HWP construction on `x` qubits with weight `k`.
    Hwp,
    /// One-ancilla-per-string HWP construction.
    HwpWeak,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Chain,
        Family::FanIn,
        Family::Unary,
        Family::Graph,
        Family::TreeNaive,
        Family::TreeOptimized,
        Family::Tree,
        Family::Grid,
        Family::Hwp,
        Family::HwpWeak,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Chain => "chain",
            Family::FanIn => "fan-in",
            Family::Unary => "unary",
            Family::Graph => "graph",
            Family::TreeNaive => "tree-naive",
            Family::TreeOptimized => "tree-optimized",
            Family::Tree => "tree",
            Family::Grid => "grid",
            Family::Hwp => "hwp",
            Family::HwpWeak => "hwp-weak",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s || (s == "fan_in" && *f == Family::FanIn))
            .ok_or_else(|| Error::InvalidInput(format!("unknown family `{s}`")))
    }
}

/// One measured instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingRow {
    pub family: Family,
    pub x: usize,
    pub k: usize,
    /// The quantity the depth is fitted against: `x`, or `C(x, k)` for HWP families.
    pub scale: f64,
    pub qubits: usize,
    pub ancillas: usize,
    pub depth: usize,
    pub size: usize,
    pub wall_ms: f64,
}

/// Least-squares fit `depth ≈ a · ⌈log₂ scale⌉ + b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogFit {
    pub a: f64,
    pub b: f64,
    pub max_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingReport {
    pub family: Family,
    pub seed: u64,
    pub rows: Vec<ScalingRow>,
    pub fit: Option<LogFit>,
}

pub fn ceil_log2(x: f64) -> f64 {
    if x <= 1.0 {
        0.0
    } else {
        x.log2().ceil()
    }
}

/// Fits `y ≈ a t + b` by least squares and reports the largest deviation.
pub fn fit_line(points: &[(f64, f64)]) -> Option<LogFit> {
    if points.is_empty() {
        return None;
    }
    let m = points.len() as f64;
    let mt = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let stt: f64 = points.iter().map(|p| (p.0 - mt).powi(2)).sum();
    let sty: f64 = points.iter().map(|p| (p.0 - mt) * (p.1 - my)).sum();
    let a = if stt == 0.0 { 0.0 } else { sty / stt };
    let b = my - a * mt;
    let max_residual = points.iter().map(|p| (p.1 - (a * p.0 + b)).abs()).fold(0.0, f64::max);
    Some(LogFit { a, b, max_residual })
}

/// Fits the depths of `rows` against `⌈log₂ scale⌉`.
pub fn fit_log_depth(rows: &[ScalingRow]) -> Option<LogFit> {
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (ceil_log2(r.scale), r.depth as f64)).collect();
    fit_line(&pts)
}

fn build(family: Family, x: usize, k: usize, seed: u64) -> Result<(Circuit, usize)> {
    let mut r = rng(seed);
    let hwp_opts = HwpOptions { max_ancillas: usize::MAX, odd_k: true };
    Ok(match family {
        Family::Chain => (chain(x), x),
        Family::FanIn => {
            let controls: Vec<usize> = (1..x).collect();
            (fan_in(0, &controls), x)
        }
        Family::Unary => {
            let amps: Vec<f64> = (0..x).map(|_| r.gen_range(0.1..1.0)).collect();
            let qubits: Vec<usize> = (0..x).collect();
            (unary_encode(&amps, &qubits)?, x)
        }
        Family::Graph => {
            let p = prepare_general(&random_graph(x, 0.5, &mut r)?)?;
            (p.circuit, x)
        }
        Family::TreeNaive | Family::TreeOptimized | Family::Tree => {
            let p = prepare_tree(&path_tree(x, &mut r)?, family == Family::TreeOptimized)?;
            (p.circuit, x)
        }
        Family::Grid => (prepare_grid(&random_grid(x, x, &mut r)?)?.circuit, x * x),
        Family::Hwp => (prepare_full(&random_hwp(x, k, &mut r)?, &hwp_opts)?.circuit, x),
        Family::HwpWeak => (prepare_weak(&random_hwp(x, k, &mut r)?, &hwp_opts)?.circuit, x),
    })
}

fn measure(family: Family, x: usize, k: usize, seed: u64) -> Result<ScalingRow> {
    let start = Instant::now();
    let (circuit, working) = build(family, x, k, seed)?;
    let lowered = lower(&circuit);
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let scale = match family {
        Family::Hwp | Family::HwpWeak => binomial(x, k) as f64,
        _ => x as f64,
    };
    Ok(ScalingRow {
        family,
        x,
        k,
        scale,
        qubits: lowered.num_qubits(),
        ancillas: lowered.num_qubits() - working,
        depth: lowered.depth(),
        size: lowered.size()?,
        wall_ms,
    })
}

/// Measures every `(x, k)` instance in parallel; `k` is ignored outside the
/// HWP families. Instance `j` uses seed `seed + j`. The `tree` family yields
/// a naive and an optimized row per instance, built from the same seed.
pub fn scaling_run(family: Family, grid: &[(usize, usize)], seed: u64) -> Result<ScalingReport> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("empty parameter grid".into()));
    }
    let modes: &[Family] = match family {
        Family::Tree => &[Family::TreeNaive, Family::TreeOptimized],
        _ => std::slice::from_ref(&family),
    };
    let jobs: Vec<(Family, usize, usize, u64)> = grid
        .iter()
        .enumerate()
        .flat_map(|(j, &(x, k))| modes.iter().map(move |&f| (f, x, k, seed.wrapping_add(j as u64))))
        .collect();
    let rows: Vec<ScalingRow> =
        jobs.par_iter().map(|&(f, x, k, s)| measure(f, x, k, s)).collect::<Result<_>>()?;
    let fitted: Vec<ScalingRow> = match family {
        Family::Tree => rows.iter().filter(|r| r.family == Family::TreeOptimized).cloned().collect(),
        _ => rows.clone(),
    };
    let fit = fit_log_depth(&fitted);
    Ok(ScalingReport { family, seed, rows, fit })
}

/// Writes one CSV row per instance. `wall_ms` is included only on request
/// so that the default output is reproducible byte for byte.
pub fn write_csv<W: std::io::Write>(report: &ScalingReport, out: W, timings: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["family", "x", "k", "scale", "qubits", "ancillas", "depth", "size"];
    if timings {
        header.push("wall_ms");
    }
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(&header).map_err(io)?;
    for r in &report.rows {
        let mut rec = vec![
            r.family.to_string(),
            r.x.to_string(),
            r.k.to_string(),
            r.scale.to_string(),
            r.qubits.to_string(),
            r.ancillas.to_string(),
            r.depth.to_string(),
            r.size.to_string(),
        ];
        if timings {
            rec.push(format!("{:.3}", r.wall_ms));
        }
        w.write_record(&rec).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line_has_zero_residual() {
        let f = fit_line(&[(1.0, 5.0), (2.0, 7.0), (3.0, 9.0)]).unwrap();
        assert!((f.a - 2.0).abs() < 1e-12 && (f.b - 3.0).abs() < 1e-12);
        assert!(f.max_residual < 1e-12);
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("nope".parse::<Family>().is_err());
    }

    #[test]
    fn empty_grid_is_rejected() {
        assert!(scaling_run(Family::Chain, &[], 0).is_err());
    }

    #[test]
    fn tree_family_reports_both_modes() {
        let rep = scaling_run(Family::Tree, &[(16, 0), (32, 0)], 1).unwrap();
        let names: Vec<&str> = rep.rows.iter().map(|r| r.family.name()).collect();
        assert_eq!(names, ["tree-naive", "tree-optimized", "tree-naive", "tree-optimized"]);
        assert!(rep.rows[0].depth >= 15 && rep.rows[2].depth >= 31);
    }

    #[test]
    fn chain_csv() {
        let rep = scaling_run(Family::Chain, &[(8, 0), (16, 0)], 0).unwrap();
        let mut buf = Vec::new();
        write_csv(&rep, &mut buf, false).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("family,x,k,scale,qubits,ancillas,depth,size\nchain,8,"));
    }
}
