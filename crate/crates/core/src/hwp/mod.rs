//! Hamming-weight-preserving states `Σ_{HW(x)=k} α_x |x⟩`.
//!
//! Bitstrings are stored as `u64` masks in which bit `q` is qubit `q`, the
//! leftmost character of the written string. Numeric values follow the
//! usual reading of the string, most significant character first.

mod full;
mod weak;

pub use full::{prepare_full, FULL_STAGES};
pub use weak::prepare_weak;

use crate::circuit::{Circuit, Qubit};
use crate::cnot::emit_fan_out;
use crate::error::{Error, Result};
use crate::sim::BasisKey;
use std::collections::BTreeMap;
use std::fmt::Write;

/// Default limit on the number of basis-state ancillas.
pub const DEFAULT_MAX_ANCILLAS: usize = 1000;

/// Amplitude table over bitstrings of a fixed Hamming weight.
#[derive(Clone, Debug, PartialEq)]
pub struct HwpSpec {
    n: usize,
    k: usize,
    amplitudes: BTreeMap<u64, f64>,
}

impl HwpSpec {
    /// Validates the table: `1 ≤ k ≤ n/2`, every key of weight `k`, finite
    /// amplitudes and at least one of them nonzero.
    pub fn new(n: usize, k: usize, amplitudes: impl IntoIterator<Item = (u64, f64)>) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::InvalidHwp(format!("n = {n} must lie in 1..=64")));
        }
        if k == 0 || 2 * k > n {
            return Err(Error::InvalidHwp(format!("k = {k} must lie in 1..={}", n / 2)));
        }
        let mut map = BTreeMap::new();
        for (x, a) in amplitudes {
            if n < 64 && x >> n != 0 {
                return Err(Error::InvalidHwp(format!("{x:#x} has more than {n} bits")));
            }
            if x.count_ones() as usize != k {
                return Err(Error::InvalidHwp(format!("{} has Hamming weight {} ≠ {k}", mask_to_bits(x, n), x.count_ones())));
            }
            if !a.is_finite() {
                return Err(Error::InvalidHwp(format!("amplitude of {} is not finite", mask_to_bits(x, n))));
            }
            if map.insert(x, a).is_some() {
                return Err(Error::InvalidHwp(format!("{} listed twice", mask_to_bits(x, n))));
            }
        }
        if map.values().all(|&a| a == 0.0) {
            return Err(Error::ZeroVector);
        }
        Ok(HwpSpec { n, k, amplitudes: map })
    }

    /// Equal amplitudes on every weight-`k` string (the Dicke state).
    pub fn dicke(n: usize, k: usize) -> Result<Self> {
        Self::new(n, k, weight_k_masks(n, k).into_iter().map(|x| (x, 1.0)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn amplitudes(&self) -> &BTreeMap<u64, f64> {
        &self.amplitudes
    }

    pub fn key(&self, x: u64) -> BasisKey {
        BasisKey::from_ones(self.n, (0..self.n).filter(|&q| x >> q & 1 == 1))
    }

    /// Parses `hwp n k` followed by `bitstring amplitude` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let perr = |line: usize, token: &str, msg: &str| Error::Parse {
            line,
            token: token.to_string(),
            msg: msg.to_string(),
        };
        let mut lines = text.lines().enumerate().filter_map(|(i, l)| {
            let body = l.split('#').next().unwrap_or("").trim();
            (!body.is_empty()).then(|| (i + 1, body.split_whitespace().collect::<Vec<_>>()))
        });
        let (hl, head) = lines.next().ok_or_else(|| perr(0, "", "empty input"))?;
        if head.len() != 3 || head[0] != "hwp" {
            return Err(perr(hl, head[0], "expected `hwp n k`"));
        }
        let num = |l: usize, t: &str| t.parse::<usize>().map_err(|_| perr(l, t, "expected an integer"));
        let (n, k) = (num(hl, head[1])?, num(hl, head[2])?);
        let mut terms = Vec::new();
        for (l, toks) in lines {
            if toks.len() != 2 {
                return Err(perr(l, toks[0], "expected `bitstring amplitude`"));
            }
            if toks[0].len() != n {
                return Err(perr(l, toks[0], &format!("expected {n} characters")));
            }
            let x = bits_to_mask(toks[0]).ok_or_else(|| perr(l, toks[0], "expected a string of 0 and 1"))?;
            if x.count_ones() as usize != k {
                return Err(perr(l, toks[0], &format!("Hamming weight is not {k}")));
            }
            let a = crate::graph::parse_weight(toks[1])
                .or_else(|| toks[1].strip_prefix('-').and_then(crate::graph::parse_weight).map(|v| -v))
                .ok_or_else(|| perr(l, toks[1], "expected a real amplitude"))?;
            terms.push((x, a));
        }
        Self::new(n, k, terms).map_err(|e| perr(hl, "", &e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("hwp {} {}\n", self.n, self.k);
        for (&x, a) in &self.amplitudes {
            writeln!(out, "{} {a:?}", mask_to_bits(x, self.n)).unwrap();
        }
        out
    }

    /// Ones of the prefix and the suffix at the split point.
    fn halves(&self, odd_k: bool) -> Result<(usize, usize)> {
        if self.k % 2 == 1 && !odd_k {
            return Err(Error::OddK(self.k));
        }
        Ok((self.k.div_ceil(2), self.k / 2))
    }
}

/// `"0101"` → mask with bits 1 and 3 set.
pub fn bits_to_mask(s: &str) -> Option<u64> {
    if s.len() > 64 {
        return None;
    }
    s.chars().enumerate().try_fold(0u64, |m, (q, ch)| match ch {
        '0' => Some(m),
        '1' => Some(m | 1 << q),
        _ => None,
    })
}

pub fn mask_to_bits(x: u64, n: usize) -> String {
    (0..n).map(|q| if x >> q & 1 == 1 { '1' } else { '0' }).collect()
}

/// All `n`-bit masks of weight `k`, in increasing numeric order of the mask.
pub fn weight_k_masks(n: usize, k: usize) -> Vec<u64> {
    fn rec(start: usize, n: usize, left: usize, acc: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for q in start..=n - left {
            rec(q + 1, n, left - 1, acc | 1 << q, out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out.sort_unstable();
    out
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, j| acc * (n - j) as u128 / (j + 1) as u128)
}

/// Cut of a weight-`k` string just after its `⌈k/2⌉`-th one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitIndex {
    /// 1-based position of the cut one, counted from the left.
    pub position: usize,
    /// Value of the first `position` characters.
    pub prefix: u64,
    /// Value of the remaining `n - position` characters.
    pub suffix: u64,
    /// The prefix as a mask over qubits `0..position`.
    pub prefix_mask: u64,
    /// The suffix as a mask over qubits `0..n - position`, relative to the cut.
    pub suffix_mask: u64,
}

/// Splits `x` (a mask, qubit 0 leftmost) so that `x = 2^(n-i) a + b`.
pub fn split_index(x: u64, n: usize, k: usize, odd_k: bool) -> Result<SplitIndex> {
    if x.count_ones() as usize != k || (n < 64 && x >> n != 0) {
        return Err(Error::InvalidHwp(format!("{} does not have Hamming weight {k}", mask_to_bits(x, n))));
    }
    if k % 2 == 1 && !odd_k {
        return Err(Error::OddK(k));
    }
    let want = k.div_ceil(2);
    let mut seen = 0;
    let mut position = 0;
    for q in 0..n {
        if x >> q & 1 == 1 {
            seen += 1;
            if seen == want {
                position = q + 1;
                break;
            }
        }
    }
    let low = |bits: usize| if bits >= 64 { u64::MAX } else { (1u64 << bits) - 1 };
    let prefix_mask = x & low(position);
    let suffix_mask = x >> position;
    let value = |mask: u64, len: usize| (0..len).fold(0u64, |v, q| v << 1 | (mask >> q & 1));
    Ok(SplitIndex {
        position,
        prefix: value(prefix_mask, position),
        suffix: value(suffix_mask, n - position),
        prefix_mask,
        suffix_mask,
    })
}

/// `Σ_{i=k/2}^{n-k/2} (k/2) (C(i, k/2) + C(n-i, k/2))`, the size of all split registers times k/2.
pub fn split_register_bound(n: usize, k: usize) -> u128 {
    let h = k / 2;
    (h..=n - h).map(|i| h as u128 * (binomial(i, h) + binomial(n - i, h))).sum()
}

/// Free list of clean scratch qubits shared between stages.
#[derive(Default)]
pub(crate) struct ScratchPool {
    free: Vec<Qubit>,
    all: Vec<Qubit>,
}

impl ScratchPool {
    pub(crate) fn take(&mut self, out: &mut Circuit, n: usize) -> Vec<Qubit> {
        let reuse = n.min(self.free.len());
        let mut qs = self.free.split_off(self.free.len() - reuse);
        if qs.len() < n {
            let fresh = out.alloc(n - qs.len());
            self.all.extend(fresh.iter().copied());
            qs.extend(fresh);
        }
        qs
    }

    pub(crate) fn give(&mut self, qs: Vec<Qubit>) {
        self.free.extend(qs);
    }

    pub(crate) fn qubits(&self) -> Vec<Qubit> {
        self.all.clone()
    }
}

/// Applies one multi-controlled X per `(controls, target)`, giving every use
/// of a shared control its own fan-out copy so the gates can run in parallel.
/// Targets must not appear among the controls.
pub(crate) fn emit_parallel_mcx(out: &mut Circuit, pool: &mut ScratchPool, gates: &[(Vec<Qubit>, Qubit)]) {
    let mut uses: BTreeMap<Qubit, usize> = BTreeMap::new();
    for (cs, _) in gates {
        for &c in cs {
            *uses.entry(c).or_insert(0) += 1;
        }
    }
    let mut slots: BTreeMap<Qubit, Vec<Qubit>> = BTreeMap::new();
    let mut taken = Vec::new();
    for (&q, &u) in &uses {
        let copies = pool.take(out, u - 1);
        taken.extend(copies.iter().copied());
        let mut s = copies;
        s.push(q);
        slots.insert(q, s);
    }
    for (q, s) in &slots {
        emit_fan_out(out, *q, &s[..s.len() - 1]);
    }
    for (cs, t) in gates {
        let mapped: Vec<Qubit> = cs.iter().map(|c| slots.get_mut(c).unwrap().pop().unwrap()).collect();
        match mapped.len() {
            0 => out.x(*t),
            1 => out.cnot(mapped[0], *t),
            2 => out.toffoli(mapped[0], mapped[1], *t),
            _ => out.push(crate::circuit::Gate::Mcx { controls: mapped, target: *t }),
        }
    }
    let mut at = 0;
    for (&q, &u) in &uses {
        emit_fan_out(out, q, &taken[at..at + u - 1]);
        at += u - 1;
    }
    pool.give(taken);
}

/// Writes the weight-`h` patterns held by `patterns` onto `targets`, then
/// clears the pattern qubits again: afterwards `targets` holds the pattern
/// that was set (at most one pattern qubit may be set on each branch) and
/// every pattern qubit is |0⟩. `pattern_ones[p]` lists the target positions
/// of pattern `p`.
pub(crate) fn emit_pattern_transfer(
    out: &mut Circuit,
    pool: &mut ScratchPool,
    patterns: &[Qubit],
    pattern_ones: &[Vec<usize>],
    targets: &[Qubit],
) -> Result<()> {
    let edges: Vec<(Qubit, Qubit)> = patterns
        .iter()
        .zip(pattern_ones)
        .flat_map(|(&p, ones)| ones.iter().map(move |&j| (p, targets[j])))
        .collect();
    let distinct = edges.iter().map(|e| e.1).collect::<std::collections::BTreeSet<_>>().len();
    let dirty = pool.take(out, edges.len() - distinct);
    crate::cnot::emit_bipartite(out, &edges, &dirty)?;
    pool.give(dirty);
    let gates: Vec<(Vec<Qubit>, Qubit)> = patterns
        .iter()
        .zip(pattern_ones)
        .map(|(&p, ones)| (ones.iter().map(|&j| targets[j]).collect(), p))
        .collect();
    emit_parallel_mcx(out, pool, &gates);
    Ok(())
}

/// Options shared by both HWP constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HwpOptions {
    /// Limit on the `C(n, k)` basis-state ancillas.
    pub max_ancillas: usize,
    /// Allow odd `k` (prefix gets `⌈k/2⌉` ones, suffix `⌊k/2⌋`).
    pub odd_k: bool,
}

impl Default for HwpOptions {
    fn default() -> Self {
        HwpOptions { max_ancillas: DEFAULT_MAX_ANCILLAS, odd_k: false }
    }
}

pub(crate) fn check_budget(spec: &HwpSpec, opts: &HwpOptions) -> Result<()> {
    let needed = spec.amplitudes().len();
    if needed > opts.max_ancillas {
        return Err(Error::BudgetExceeded { needed, budget: opts.max_ancillas });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_examples() {
        let s = split_index(bits_to_mask("0101").unwrap(), 4, 2, false).unwrap();
        assert_eq!((s.position, s.prefix, s.suffix), (2, 0b01, 0b01));
        let s = split_index(bits_to_mask("1100").unwrap(), 4, 2, false).unwrap();
        assert_eq!((s.position, s.prefix, s.suffix), (1, 0b1, 0b100));
        assert_eq!(split_index(0b111, 6, 3, false), Err(Error::OddK(3)));
    }

    #[test]
    fn split_reconstructs_every_string() {
        let (n, k) = (8, 4);
        let masks = weight_k_masks(n, k);
        assert_eq!(masks.len(), 70);
        for x in masks {
            let s = split_index(x, n, k, false).unwrap();
            let value = (0..n).fold(0u64, |v, q| v << 1 | (x >> q & 1));
            assert_eq!(s.prefix << (n - s.position) | s.suffix, value);
            assert_eq!(s.prefix.count_ones(), 2);
            assert_eq!(s.suffix.count_ones(), 2);
            assert_eq!(s.prefix_mask | s.suffix_mask << s.position, x);
        }
    }

    #[test]
    fn spec_validation_and_text() {
        assert!(matches!(HwpSpec::new(4, 2, [(0b111, 1.0)]), Err(Error::InvalidHwp(_))));
        assert!(matches!(HwpSpec::new(4, 2, [(0b11, 0.0)]), Err(Error::ZeroVector)));
        assert!(matches!(HwpSpec::new(4, 3, [(0b111, 1.0)]), Err(Error::InvalidHwp(_))));
        let s = HwpSpec::parse("hwp 4 2\n1100 0.5\n0011 -sqrt(3)\n").unwrap();
        assert_eq!(s.amplitudes()[&0b1100], -(3f64.sqrt()));
        assert_eq!(HwpSpec::parse(&s.to_text()).unwrap(), s);
        assert!(matches!(HwpSpec::parse("hwp 4 2\n1110 1\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(40, 20), 137846528820);
        assert_eq!(weight_k_masks(6, 2).len(), 15);
    }
}
