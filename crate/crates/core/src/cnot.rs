//! Logarithmic-depth CNOT circuits: prefix chains, fan-in and fan-out trees,
//! bipartite CNOT layers through dirty ancillas, and unipotent linear maps.

use crate::circuit::{Circuit, Qubit};
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};
use std::collections::HashSet;

fn register_for(qubits: impl IntoIterator<Item = Qubit>) -> Circuit {
    Circuit::new(qubits.into_iter().max().map_or(0, |m| m + 1))
}

/// Prefix-XOR network on `0..n`: qubit `j` ends with `x_0 ^ ... ^ x_j`.
pub fn chain(n: usize) -> Circuit {
    let mut c = Circuit::new(n);
    let qs: Vec<Qubit> = (0..n).collect();
    emit_chain(&mut c, &qs);
    c
}

/// Brent-Kung up-sweep and down-sweep over `qs`.
pub fn emit_chain(out: &mut Circuit, qs: &[Qubit]) {
    let n = qs.len();
    let mut d = 1;
    while d < n {
        for j in (2 * d - 1..n).step_by(2 * d) {
            out.cnot(qs[j - d], qs[j]);
        }
        d *= 2;
    }
    while d > 1 {
        d /= 2;
        for j in (3 * d - 1..n).step_by(2 * d) {
            out.cnot(qs[j - d], qs[j]);
        }
    }
}

/// Inverse prefix network: qubit `j` ends with `x_{j-1} ^ x_j`.
pub fn emit_chain_inverse(out: &mut Circuit, qs: &[Qubit]) {
    let mut tmp = Circuit::new(out.num_qubits());
    emit_chain(&mut tmp, qs);
    out.append(&tmp.inverse());
}

/// Adds the parity of `controls` into `target`.
pub fn fan_in(target: Qubit, controls: &[Qubit]) -> Circuit {
    let mut c = register_for(controls.iter().copied().chain([target]));
    emit_fan_in(&mut c, target, controls);
    c
}

/// Pairs neighbouring controls, recurses on the survivors, then undoes the pairing.
pub fn emit_fan_in(out: &mut Circuit, target: Qubit, controls: &[Qubit]) {
    match controls.len() {
        0 => {}
        1 => out.cnot(controls[0], target),
        _ => {
            let pairs: Vec<(Qubit, Qubit)> =
                controls.chunks(2).filter(|p| p.len() == 2).map(|p| (p[1], p[0])).collect();
            for &(c, t) in &pairs {
                out.cnot(c, t);
            }
            let heads: Vec<Qubit> = controls.chunks(2).map(|p| p[0]).collect();
            emit_fan_in(out, target, &heads);
            for &(c, t) in pairs.iter().rev() {
                out.cnot(c, t);
            }
        }
    }
}

/// Adds `source` into every qubit of `targets`.
pub fn fan_out(source: Qubit, targets: &[Qubit]) -> Circuit {
    let mut c = register_for(targets.iter().copied().chain([source]));
    emit_fan_out(&mut c, source, targets);
    c
}

/// The fan-in tree with every CNOT reversed.
pub fn emit_fan_out(out: &mut Circuit, source: Qubit, targets: &[Qubit]) {
    match targets.len() {
        0 => {}
        1 => out.cnot(source, targets[0]),
        _ => {
            let pairs: Vec<(Qubit, Qubit)> =
                targets.chunks(2).filter(|p| p.len() == 2).map(|p| (p[0], p[1])).collect();
            for &(c, t) in &pairs {
                out.cnot(c, t);
            }
            let heads: Vec<Qubit> = targets.chunks(2).map(|p| p[0]).collect();
            emit_fan_out(out, source, &heads);
            for &(c, t) in pairs.iter().rev() {
                out.cnot(c, t);
            }
        }
    }
}

/// CNOTs `a -> b` for every edge, routed through dirty ancillas.
#[derive(Clone, Debug, Default)]
pub struct BipartiteSpec {
    pub edges: Vec<(Qubit, Qubit)>,
    pub ancillas: Vec<Qubit>,
}

/// Builds the bipartite layer; the ancillas may hold any values and are restored.
pub fn bipartite_schedule(spec: &BipartiteSpec) -> Result<Circuit> {
    let all = spec.edges.iter().flat_map(|&(a, b)| [a, b]).chain(spec.ancillas.iter().copied());
    let mut c = register_for(all);
    emit_bipartite(&mut c, &spec.edges, &spec.ancillas)?;
    Ok(c)
}

/// Appends a bipartite CNOT layer. With no ancillas the edges are emitted as plain CNOTs.
pub fn emit_bipartite(out: &mut Circuit, edges: &[(Qubit, Qubit)], ancillas: &[Qubit]) -> Result<()> {
    let sources: HashSet<Qubit> = edges.iter().map(|e| e.0).collect();
    let sinks: HashSet<Qubit> = edges.iter().map(|e| e.1).collect();
    if let Some(q) = sources.intersection(&sinks).next() {
        return Err(Error::InvalidInput(format!("qubit {q} is both a source and a target")));
    }
    let anc: HashSet<Qubit> = ancillas.iter().copied().collect();
    if anc.len() != ancillas.len() {
        return Err(Error::InvalidInput("repeated ancilla".into()));
    }
    if let Some(q) = ancillas.iter().find(|q| sources.contains(q) || sinks.contains(q)) {
        return Err(Error::InvalidInput(format!("ancilla {q} is also an edge endpoint")));
    }
    if ancillas.is_empty() {
        for &(a, b) in edges {
            out.cnot(a, b);
        }
        return Ok(());
    }
    for batch in edges.chunks(ancillas.len()) {
        let by_source = group(batch.iter().enumerate().map(|(j, &(a, _))| (a, ancillas[j])));
        let by_sink = group(batch.iter().enumerate().map(|(j, &(_, b))| (b, ancillas[j])));
        for _ in 0..2 {
            for (b, ys) in &by_sink {
                emit_fan_in(out, *b, ys);
            }
            for (a, ys) in &by_source {
                emit_fan_out(out, *a, ys);
            }
        }
    }
    Ok(())
}

fn group(items: impl Iterator<Item = (Qubit, Qubit)>) -> Vec<(Qubit, Vec<Qubit>)> {
    let mut out: Vec<(Qubit, Vec<Qubit>)> = Vec::new();
    let mut index = std::collections::HashMap::new();
    for (key, v) in items {
        let i = *index.entry(key).or_insert_with(|| {
            out.push((key, Vec::new()));
            out.len() - 1
        });
        out[i].1.push(v);
    }
    out
}

/// Incrementally maintained basis for membership tests.
struct XorBasis {
    rows: Vec<(usize, Gf2Vector)>,
}

impl XorBasis {
    fn new() -> Self {
        XorBasis { rows: Vec::new() }
    }

    fn reduce(&self, v: &Gf2Vector) -> Gf2Vector {
        let mut v = v.clone();
        for (pivot, r) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign(r);
            }
        }
        v
    }

    /// Inserts `v`, returning false if it was already in the span.
    fn insert(&mut self, v: &Gf2Vector) -> bool {
        let r = self.reduce(v);
        let pivot = r.ones().next();
        match pivot {
            None => false,
            Some(p) => {
                for (_, row) in self.rows.iter_mut() {
                    if row.get(p) {
                        row.xor_assign(&r);
                    }
                }
                self.rows.push((p, r));
                true
            }
        }
    }
}

/// Jordan form of a unipotent matrix: `m = P^{-1} J P` where `J` is block
/// diagonal with lower-bidiagonal all-ones blocks of the returned sizes.
pub fn jordan_decomposition(m: &Gf2Matrix) -> Result<(Gf2Matrix, Vec<usize>)> {
    if !m.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    let n = m.rows();
    let nil = m.add(&Gf2Matrix::identity(n))?;
    let mut powers = vec![Gf2Matrix::identity(n)];
    while !powers.last().unwrap().is_zero() {
        let next = powers.last().unwrap().mul(&nil)?;
        powers.push(next);
    }
    let index = powers.len() - 1;
    let kernels: Vec<Vec<Gf2Vector>> = powers.iter().map(|p| p.kernel()).collect();
    let mut heads: Vec<(Gf2Vector, usize)> = Vec::new();
    for level in (1..=index).rev() {
        let mut span = XorBasis::new();
        for v in &kernels[level - 1] {
            span.insert(v);
        }
        for (h, len) in &heads {
            let mut v = h.clone();
            for _ in 0..(len - level) {
                v = nil.mul_vec(&v)?;
            }
            span.insert(&v);
        }
        for v in &kernels[level] {
            if span.insert(v) {
                heads.push((v.clone(), level));
            }
        }
    }
    let mut q = Gf2Matrix::zeros(n, n);
    let mut sizes = Vec::new();
    let mut col = 0;
    for (h, len) in &heads {
        let mut v = h.clone();
        for _ in 0..*len {
            q.set_column(col, &v);
            col += 1;
            v = nil.mul_vec(&v)?;
        }
        sizes.push(*len);
    }
    if col != n {
        return Err(Error::Invariant(format!("Jordan basis has {col} of {n} vectors")));
    }
    Ok((q.inverse()?, sizes))
}

/// Block-diagonal matrix with lower-bidiagonal blocks.
pub fn jordan_matrix(sizes: &[usize]) -> Gf2Matrix {
    let n = sizes.iter().sum();
    let mut j = Gf2Matrix::identity(n);
    let mut start = 0;
    for &s in sizes {
        for i in 1..s {
            j.set(start + i, start + i - 1, true);
        }
        start += s;
    }
    j
}

/// Circuit realizing the unipotent map `m` on `working`, borrowing `dirty`
/// (at least `working.len()` qubits; extra ones speed up the bipartite layers).
pub fn unipotent_cnot(m: &Gf2Matrix, working: &[Qubit], dirty: &[Qubit]) -> Result<Circuit> {
    let mut c = register_for(working.iter().chain(dirty).copied());
    emit_unipotent(&mut c, m, working, dirty)?;
    Ok(c)
}

/// Appends the unipotent-map circuit.
///
/// With `y` the first `n` dirty qubits: `y += Px`, `x += P^{-1} y`,
/// `y += Px` leaves `(P^{-1} y, Px)`; applying `J` to `y` and repeating the
/// three bipartite layers gives `(P^{-1} J P x, y)`.
pub fn emit_unipotent(out: &mut Circuit, m: &Gf2Matrix, working: &[Qubit], dirty: &[Qubit]) -> Result<()> {
    let n = working.len();
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch(format!("{}x{} map on {n} qubits", m.rows(), m.cols())));
    }
    if dirty.len() < n {
        return Err(Error::InvalidInput(format!("need {n} borrowed qubits, have {}", dirty.len())));
    }
    if !m.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    if m.is_identity() {
        return Ok(());
    }
    let (p, sizes) = jordan_decomposition(m)?;
    let p_inv = p.inverse()?;
    let (y, extra) = dirty.split_at(n);
    let (p, p_inv) = (&p, &p_inv);
    let forward: Vec<(Qubit, Qubit)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| p.get(i, j)).map(move |j| (working[j], y[i])))
        .collect();
    let backward: Vec<(Qubit, Qubit)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| p_inv.get(i, j)).map(move |j| (y[j], working[i])))
        .collect();
    let three_layers = |out: &mut Circuit| -> Result<()> {
        emit_bipartite(out, &forward, extra)?;
        emit_bipartite(out, &backward, extra)?;
        emit_bipartite(out, &forward, extra)
    };
    three_layers(out)?;
    let mut start = 0;
    for s in sizes {
        emit_chain_inverse(out, &y[start..start + s]);
        start += s;
    }
    three_layers(out)
}
