use super::key::BasisKey;
use super::sparse::SparseState;
use crate::circuit::{Circuit, Gate, Qubit};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Largest register the dense simulator accepts.
pub const MAX_DENSE_QUBITS: usize = 14;

type C = Complex64;

/// Full complex state vector. Qubit `q` is bit `n - 1 - q` of the index, so
/// the index read in binary is the ket string.
#[derive(Clone, Debug)]
pub struct DenseState {
    n: usize,
    amps: Vec<C>,
}

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

impl DenseState {
    pub fn zero(n: usize) -> Result<Self> {
        if n > MAX_DENSE_QUBITS {
            return Err(Error::InvalidInput(format!("{n} qubits exceeds dense limit {MAX_DENSE_QUBITS}")));
        }
        let mut amps = vec![c(0.0); 1 << n];
        amps[0] = c(1.0);
        Ok(DenseState { n, amps })
    }

    pub fn from_sparse(s: &SparseState) -> Result<Self> {
        let mut d = Self::zero(s.num_qubits())?;
        d.amps[0] = c(0.0);
        for (k, a) in s.terms() {
            let idx = d.index_of(k);
            d.amps[idx] += *a;
        }
        Ok(d)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C] {
        &self.amps
    }

    fn bit(&self, q: Qubit) -> usize {
        1 << (self.n - 1 - q)
    }

    pub fn index_of(&self, k: &BasisKey) -> usize {
        (0..self.n).filter(|&q| k.get(q)).map(|q| self.bit(q)).sum()
    }

    pub fn amplitude(&self, k: &BasisKey) -> C {
        self.amps[self.index_of(k)]
    }

    pub fn run(&mut self, circ: &Circuit) -> Result<()> {
        if circ.num_qubits() > self.n {
            return Err(Error::DimensionMismatch(format!(
                "circuit on {} qubits, state on {}",
                circ.num_qubits(),
                self.n
            )));
        }
        for g in circ.gates() {
            self.apply(g);
        }
        Ok(())
    }

    /// Applies `u` (row-major, `2^k x 2^k`) on `qs`, first qubit most significant.
    fn apply_matrix(&mut self, qs: &[Qubit], u: &[Vec<C>]) {
        let k = qs.len();
        let dim = 1 << k;
        let masks: Vec<usize> = qs.iter().map(|&q| self.bit(q)).collect();
        let all: usize = masks.iter().sum();
        let offset = |local: usize| -> usize {
            (0..k).filter(|&i| local >> (k - 1 - i) & 1 == 1).map(|i| masks[i]).sum()
        };
        let offsets: Vec<usize> = (0..dim).map(offset).collect();
        let mut buf = vec![c(0.0); dim];
        for base in 0..self.amps.len() {
            if base & all != 0 {
                continue;
            }
            for (r, b) in buf.iter_mut().enumerate() {
                *b = (0..dim).map(|col| u[r][col] * self.amps[base + offsets[col]]).sum();
            }
            for (r, b) in buf.iter().enumerate() {
                self.amps[base + offsets[r]] = *b;
            }
        }
    }

    fn permute(&mut self, f: impl Fn(usize) -> usize) {
        let mut out = vec![c(0.0); self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            out[f(i)] += *a;
        }
        self.amps = out;
    }

    fn controlled(u: &[Vec<C>], controls: usize) -> Vec<Vec<C>> {
        let dim = u.len() << controls;
        let off = dim - u.len();
        let mut m = vec![vec![c(0.0); dim]; dim];
        for (i, row) in m.iter_mut().enumerate().take(off) {
            row[i] = c(1.0);
        }
        for (r, row) in u.iter().enumerate() {
            for (col, v) in row.iter().enumerate() {
                m[off + r][off + col] = *v;
            }
        }
        m
    }

    pub fn apply(&mut self, g: &Gate) {
        let ry = |t: f64| vec![vec![c((t / 2.0).cos()), c(-(t / 2.0).sin())], vec![c((t / 2.0).sin()), c((t / 2.0).cos())]];
        let x = vec![vec![c(0.0), c(1.0)], vec![c(1.0), c(0.0)]];
        match g {
            Gate::X { target } => self.apply_matrix(&[*target], &x),
            Gate::H { target } => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                self.apply_matrix(&[*target], &[vec![c(s), c(s)], vec![c(s), c(-s)]])
            }
            Gate::Ry { target, angle } => self.apply_matrix(&[*target], &ry(*angle)),
            Gate::Phase { target, angle } => {
                self.apply_matrix(&[*target], &[vec![c(1.0), c(0.0)], vec![c(0.0), C::from_polar(1.0, *angle)]])
            }
            Gate::Cnot { control, target } => self.apply_matrix(&[*control, *target], &Self::controlled(&x, 1)),
            Gate::Toffoli { controls, target } => {
                self.apply_matrix(&[controls[0], controls[1], *target], &Self::controlled(&x, 2))
            }
            Gate::CRy { control, target, angle } => {
                self.apply_matrix(&[*control, *target], &Self::controlled(&ry(*angle), 1))
            }
            Gate::CCRy { controls, target, angle } => {
                self.apply_matrix(&[controls[0], controls[1], *target], &Self::controlled(&ry(*angle), 2))
            }
            Gate::Rbs { first, second, angle } => self.apply_matrix(&[*first, *second], &rbs(*angle)),
            Gate::CRbs { control, first, second, angle } => {
                self.apply_matrix(&[*control, *first, *second], &Self::controlled(&rbs(*angle), 1))
            }
            Gate::Mcx { controls, target } => {
                let cm: usize = controls.iter().map(|&q| self.bit(q)).sum();
                let tm = self.bit(*target);
                self.permute(|i| if i & cm == cm { i ^ tm } else { i });
            }
            Gate::Hwc { controls, target, weight } => {
                let cm: usize = controls.iter().map(|&q| self.bit(q)).sum();
                let tm = self.bit(*target);
                let w = *weight as u32;
                self.permute(|i| if (i & cm).count_ones() == w { i ^ tm } else { i });
            }
        }
    }

    /// `|⟨self|other⟩|`.
    pub fn fidelity(&self, other: &DenseState) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("{} vs {} qubits", self.n, other.n)));
        }
        let ip: C = self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum();
        Ok(ip.norm())
    }
}

/// RBS on basis `|00⟩, |01⟩, |10⟩, |11⟩` with the first qubit most significant.
fn rbs(t: f64) -> Vec<Vec<C>> {
    let (s, co) = t.sin_cos();
    vec![
        vec![c(1.0), c(0.0), c(0.0), c(0.0)],
        vec![c(0.0), c(co), c(s), c(0.0)],
        vec![c(0.0), c(-s), c(co), c(0.0)],
        vec![c(0.0), c(0.0), c(0.0), c(1.0)],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rbs_columns_follow_definition() {
        // column |10⟩ (index 2) -> cos|10⟩ + sin|01⟩
        let m = rbs(0.4);
        assert!((m[2][2].re - 0.4f64.cos()).abs() < 1e-15);
        assert!((m[1][2].re - 0.4f64.sin()).abs() < 1e-15);
        assert!((m[2][1].re + 0.4f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn ket_string_is_binary_index() {
        let mut d = DenseState::zero(3).unwrap();
        d.apply(&Gate::X { target: 0 });
        assert_eq!(d.amplitudes()[0b100], c(1.0));
        assert_eq!(d.amplitude(&BasisKey::parse("100").unwrap()), c(1.0));
    }

    #[test]
    fn dense_limit_is_enforced() {
        assert!(DenseState::zero(MAX_DENSE_QUBITS + 1).is_err());
    }
}
