use crate::circuit::Qubit;
use smallvec::SmallVec;
use std::fmt;

/// A computational basis state, one bit per qubit, packed into words.
/// Qubit 0 is the leftmost character of the ket string.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BasisKey(SmallVec<[u64; 4]>);

impl BasisKey {
    pub fn zeros(num_qubits: usize) -> Self {
        BasisKey(SmallVec::from_elem(0, num_qubits.div_ceil(64).max(1)))
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut k = Self::zeros(bits.len());
        for (q, &b) in bits.iter().enumerate() {
            if b {
                k.flip(q);
            }
        }
        k
    }

    /// Key with ones at the given qubits.
    pub fn from_ones(num_qubits: usize, ones: impl IntoIterator<Item = Qubit>) -> Self {
        let mut k = Self::zeros(num_qubits);
        for q in ones {
            k.set(q, true);
        }
        k
    }

    /// Parses a string of `0`/`1` characters, qubit 0 first.
    pub fn parse(s: &str) -> Option<Self> {
        let bits: Option<Vec<bool>> = s
            .chars()
            .map(|ch| match ch {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        bits.map(|b| Self::from_bits(&b))
    }

    #[inline]
    pub fn get(&self, q: Qubit) -> bool {
        self.0.get(q / 64).is_some_and(|w| (w >> (q % 64)) & 1 == 1)
    }

    #[inline]
    pub fn flip(&mut self, q: Qubit) {
        self.0[q / 64] ^= 1u64 << (q % 64);
    }

    #[inline]
    pub fn set(&mut self, q: Qubit, b: bool) {
        if self.get(q) != b {
            self.flip(q);
        }
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Ones among qubits `range`.
    pub fn ones(&self) -> impl Iterator<Item = Qubit> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    /// True when some bit outside `0..n` is set.
    pub fn any_beyond(&self, n: usize) -> bool {
        self.0.iter().enumerate().any(|(i, &w)| {
            let lo = i * 64;
            if lo >= n {
                w != 0
            } else if lo + 64 <= n {
                false
            } else {
                w >> (n - lo) != 0
            }
        })
    }

    /// Widens the key so that it can hold `num_qubits` bits.
    pub fn widen(&mut self, num_qubits: usize) {
        let words = num_qubits.div_ceil(64).max(1);
        if self.0.len() < words {
            self.0.resize(words, 0);
        }
    }

    /// Keeps only the first `n` bits.
    pub fn truncate(&self, n: usize) -> BasisKey {
        let mut k = BasisKey::zeros(n);
        for q in self.ones().take_while(|&q| q < n) {
            k.flip(q);
        }
        k
    }

    /// The bit string over `n` qubits.
    pub fn to_string(&self, n: usize) -> String {
        (0..n).map(|q| if self.get(q) { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.ones().last().map_or(1, |q| q + 1);
        write!(f, "|{}⟩", self.to_string(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leftmost_char_is_qubit_zero() {
        let k = BasisKey::parse("0101").unwrap();
        assert!(!k.get(0) && k.get(1) && !k.get(2) && k.get(3));
        assert_eq!(k.to_string(4), "0101");
        assert_eq!(k.ones().collect::<Vec<_>>(), vec![1, 3]);
    }

    #[test]
    fn bits_beyond_a_prefix() {
        let mut k = BasisKey::zeros(200);
        k.flip(3);
        assert!(!k.any_beyond(4));
        assert!(k.any_beyond(3));
        k.flip(150);
        assert!(k.any_beyond(100));
        assert!(!k.any_beyond(151));
        assert_eq!(k.truncate(10), BasisKey::from_ones(10, [3]));
    }
}
