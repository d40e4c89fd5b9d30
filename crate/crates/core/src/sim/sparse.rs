use super::key::BasisKey;
use crate::circuit::{Circuit, Gate, Qubit};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::HashMap;

/// Amplitudes with modulus below this are dropped after branching gates.
pub const PRUNE_THRESHOLD: f64 = 1e-14;
const RENORM_DRIFT: f64 = 1e-9;

type C = Complex64;

/// A state stored as its non-zero amplitudes. Keys are unique.
#[derive(Clone, Debug)]
pub struct SparseState {
    num_qubits: usize,
    terms: Vec<(BasisKey, C)>,
}

impl SparseState {
    /// The all-zero state.
    pub fn zero(num_qubits: usize) -> Self {
        SparseState { num_qubits, terms: vec![(BasisKey::zeros(num_qubits), C::new(1.0, 0.0))] }
    }

    /// Builds a state from (key, amplitude) pairs; repeated keys are summed.
    /// The result is not normalized.
    pub fn from_terms(num_qubits: usize, terms: impl IntoIterator<Item = (BasisKey, C)>) -> Self {
        let mut map: HashMap<BasisKey, C> = HashMap::new();
        for (mut k, a) in terms {
            k.widen(num_qubits);
            *map.entry(k).or_insert(C::new(0.0, 0.0)) += a;
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, a)| a.norm() >= PRUNE_THRESHOLD).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        SparseState { num_qubits, terms }
    }

    /// Real-amplitude convenience constructor.
    pub fn from_real(num_qubits: usize, terms: impl IntoIterator<Item = (BasisKey, f64)>) -> Self {
        Self::from_terms(num_qubits, terms.into_iter().map(|(k, a)| (k, C::new(a, 0.0))))
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Number of stored basis states.
    pub fn support(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[(BasisKey, C)] {
        &self.terms
    }

    pub fn amplitude(&self, key: &BasisKey) -> C {
        self.terms.iter().find(|(k, _)| k == key).map_or(C::new(0.0, 0.0), |t| t.1)
    }

    pub fn to_map(&self) -> HashMap<BasisKey, C> {
        self.terms.iter().cloned().collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.iter().map(|(_, a)| a.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) -> Result<()> {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        for (_, a) in &mut self.terms {
            *a /= n;
        }
        Ok(())
    }

    /// Adds `extra` zero qubits at the end of the register.
    pub fn widen(&mut self, num_qubits: usize) {
        if num_qubits > self.num_qubits {
            self.num_qubits = num_qubits;
            for (k, _) in &mut self.terms {
                k.widen(num_qubits);
            }
        }
    }

    /// Squared mass on basis states with a set bit outside `0..working`.
    pub fn ancilla_residue(&self, working: usize) -> f64 {
        self.terms.iter().filter(|(k, _)| k.any_beyond(working)).fold(0.0, |s, (_, a)| s + a.norm_sqr())
    }

    /// The component with all qubits outside `0..working` at zero, on `working` qubits.
    pub fn restrict(&self, working: usize) -> SparseState {
        SparseState::from_terms(
            working,
            self.terms.iter().filter(|(k, _)| !k.any_beyond(working)).map(|(k, a)| (k.truncate(working), *a)),
        )
    }

    /// Applies every gate of `c`; the register grows to `c.num_qubits()` with zeros.
    pub fn run(&mut self, c: &Circuit) {
        self.widen(c.num_qubits());
        for g in c.gates() {
            self.apply(g);
        }
    }

    /// Like [`run`](Self::run), calling `f(index, state)` after each gate.
    pub fn run_with(&mut self, c: &Circuit, mut f: impl FnMut(usize, &SparseState)) {
        self.widen(c.num_qubits());
        for (i, g) in c.gates().enumerate() {
            self.apply(g);
            f(i, self);
        }
    }

    /// Applies one gate. Classical gates permute keys in place.
    pub fn apply(&mut self, g: &Gate) {
        if let Some(q) = g.qubits().into_iter().max() {
            self.widen(q + 1);
        }
        match g {
            Gate::X { target } => self.permute(|k| k.flip(*target)),
            Gate::Cnot { control, target } => self.permute(|k| {
                if k.get(*control) {
                    k.flip(*target)
                }
            }),
            Gate::Toffoli { controls, target } => self.permute(|k| {
                if k.get(controls[0]) && k.get(controls[1]) {
                    k.flip(*target)
                }
            }),
            Gate::Mcx { controls, target } => self.permute(|k| {
                if controls.iter().all(|&c| k.get(c)) {
                    k.flip(*target)
                }
            }),
            Gate::Hwc { controls, target, weight } => self.permute(|k| {
                if controls.iter().filter(|&&c| k.get(c)).count() == *weight {
                    k.flip(*target)
                }
            }),
            Gate::Phase { target, angle } => {
                let ph = C::from_polar(1.0, *angle);
                for (k, a) in &mut self.terms {
                    if k.get(*target) {
                        *a *= ph;
                    }
                }
            }
            Gate::H { target } => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                self.apply_1q(&[], *target, [[s, s], [s, -s]]);
            }
            Gate::Ry { target, angle } => self.apply_1q(&[], *target, ry(*angle)),
            Gate::CRy { control, target, angle } => self.apply_1q(&[*control], *target, ry(*angle)),
            Gate::CCRy { controls, target, angle } => self.apply_1q(controls, *target, ry(*angle)),
            Gate::Rbs { first, second, angle } => self.apply_rbs(None, *first, *second, *angle),
            Gate::CRbs { control, first, second, angle } => self.apply_rbs(Some(*control), *first, *second, *angle),
        }
    }

    fn permute(&mut self, f: impl Fn(&mut BasisKey)) {
        for (k, _) in &mut self.terms {
            f(k);
        }
    }

    fn finish(&mut self, passive: Vec<(BasisKey, C)>, active: HashMap<BasisKey, C>) {
        let mut terms = passive;
        terms.extend(active.into_iter().filter(|(_, a)| a.norm() >= PRUNE_THRESHOLD));
        self.terms = terms;
        let n = self.norm_sqr();
        if (n - 1.0).abs() > RENORM_DRIFT && n > 0.0 {
            let s = n.sqrt();
            for (_, a) in &mut self.terms {
                *a /= s;
            }
        }
    }

    /// Real 2x2 matrix `u` on `target` when all `controls` are set.
    fn apply_1q(&mut self, controls: &[Qubit], target: Qubit, u: [[f64; 2]; 2]) {
        let mut passive = Vec::new();
        let mut active: HashMap<BasisKey, C> = HashMap::new();
        for (k, a) in std::mem::take(&mut self.terms) {
            if !controls.iter().all(|&c| k.get(c)) {
                passive.push((k, a));
                continue;
            }
            let b = k.get(target) as usize;
            let mut k0 = k.clone();
            k0.set(target, false);
            let mut k1 = k;
            k1.set(target, true);
            if u[0][b] != 0.0 {
                *active.entry(k0).or_default() += a * u[0][b];
            }
            if u[1][b] != 0.0 {
                *active.entry(k1).or_default() += a * u[1][b];
            }
        }
        self.finish(passive, active);
    }

    fn apply_rbs(&mut self, control: Option<Qubit>, first: Qubit, second: Qubit, angle: f64) {
        let (s, c) = angle.sin_cos();
        let mut passive = Vec::new();
        let mut active: HashMap<BasisKey, C> = HashMap::new();
        for (k, a) in std::mem::take(&mut self.terms) {
            let on = control.is_none_or(|q| k.get(q));
            let (x, y) = (k.get(first), k.get(second));
            if !on || x == y {
                passive.push((k, a));
                continue;
            }
            let mut partner = k.clone();
            partner.flip(first);
            partner.flip(second);
            let (k10, k01, from10) = if x { (k, partner, true) } else { (partner, k, false) };
            let (a10, a01) = if from10 { (a * c, a * s) } else { (a * -s, a * c) };
            *active.entry(k10).or_default() += a10;
            *active.entry(k01).or_default() += a01;
        }
        self.finish(passive, active);
    }
}

fn ry(angle: f64) -> [[f64; 2]; 2] {
    let (s, c) = (angle / 2.0).sin_cos();
    [[c, -s], [s, c]]
}

/// `|⟨a|b⟩|`; both states must have the same register width.
pub fn fidelity(a: &SparseState, b: &SparseState) -> Result<f64> {
    if a.num_qubits != b.num_qubits {
        return Err(Error::DimensionMismatch(format!("{} vs {} qubits", a.num_qubits, b.num_qubits)));
    }
    let (small, large) = if a.support() <= b.support() { (a, b) } else { (b, a) };
    let map = large.to_map();
    let mut ip = C::new(0.0, 0.0);
    for (k, x) in &small.terms {
        if let Some(y) = map.get(k) {
            ip += x.conj() * y;
        }
    }
    Ok(ip.norm())
}
