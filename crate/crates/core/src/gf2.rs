//! Dense bit-packed matrices and vectors over GF(2).
//!
//! Rows are packed into `u64` words. A CNOT circuit on `n` qubits acts on
//! column vectors, so the matrix of a circuit `g1; g2; ...; gk` is
//! `E_k ... E_2 E_1` where `CNOT(c -> t)` is `I + E_{t,c}`.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use std::fmt;

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A packed bit vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Gf2Vector { len, words: vec![0; words_for(len)] }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if b {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &Gf2Vector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn dot(&self, other: &Gf2Vector) -> bool {
        assert_eq!(self.len, other.len);
        let ones: u32 = self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum();
        ones % 2 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

/// A dense `rows x cols` matrix over GF(2), row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Gf2Matrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged row {i}");
            for (j, &b) in r.iter().enumerate() {
                m.set(i, j, b != 0);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        let w = &mut self.data[r * self.stride + c / WORD];
        let mask = 1u64 << (c % WORD);
        if b {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        self.data[r * self.stride + c / WORD] ^= 1u64 << (c % WORD);
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    /// Row `dst` ^= row `src`.
    pub fn xor_row(&mut self, dst: usize, src: usize) {
        assert!(dst < self.rows && src < self.rows);
        if dst == src {
            self.data[dst * self.stride..(dst + 1) * self.stride].fill(0);
            return;
        }
        let s = self.stride;
        let (d, sr) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        for (a, b) in d.iter_mut().zip(sr) {
            *a ^= b;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    pub fn row(&self, r: usize) -> Gf2Vector {
        Gf2Vector { len: self.cols, words: self.row_words(r).to_vec() }
    }

    pub fn set_row(&mut self, r: usize, v: &Gf2Vector) {
        assert_eq!(v.len(), self.cols);
        let s = self.stride;
        self.data[r * s..(r + 1) * s].copy_from_slice(&v.words);
    }

    pub fn column(&self, c: usize) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn set_column(&mut self, c: usize, v: &Gf2Vector) {
        assert_eq!(v.len(), self.rows);
        for r in 0..self.rows {
            self.set(r, c, v.get(r));
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows) && self.is_square()
    }

    /// Number of ones.
    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let dst = r * out.stride;
            for k in 0..self.cols {
                if self.get(r, k) {
                    let src = other.row_words(k);
                    for (a, b) in out.data[dst..dst + out.stride].iter_mut().zip(src) {
                        *a ^= b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &Gf2Vector) -> Result<Gf2Vector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!("{}x{} times vector of {}", self.rows, self.cols, v.len())));
        }
        let mut out = Gf2Vector::zeros(self.rows);
        for r in 0..self.rows {
            let ones: u32 = self.row_words(r).iter().zip(&v.words).map(|(a, b)| (a & b).count_ones()).sum();
            if ones % 2 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        Ok(out)
    }

    /// Reduces a copy to row echelon form and returns (echelon, pivot columns).
    fn echelon(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| m.get(r, col)) else { continue };
            m.swap_rows(row, p);
            for r in 0..m.rows {
                if r != row && m.get(r, col) {
                    m.xor_row(r, row);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Basis of the right null space `{ x : self * x = 0 }`, as columns.
    pub fn kernel(&self) -> Vec<Gf2Vector> {
        let (e, pivots) = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = Gf2Vector::zeros(self.cols);
            v.set(free, true);
            for (r, &p) in pivots.iter().enumerate() {
                if e.get(r, free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Gf2Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("inverse of {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Gf2Matrix::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| a.get(r, col)).ok_or(Error::SingularMatrix)?;
            a.swap_rows(col, p);
            inv.swap_rows(col, p);
            for r in 0..n {
                if r != col && a.get(r, col) {
                    a.xor_row(r, col);
                    inv.xor_row(r, col);
                }
            }
        }
        Ok(inv)
    }

    /// True when `(M + I)^n = 0`, checked by repeated squaring.
    pub fn is_unipotent(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        let mut nil = self.add(&Gf2Matrix::identity(n)).expect("square");
        let mut power = 1usize;
        while power < n {
            nil = nil.mul(&nil).expect("square");
            power *= 2;
        }
        nil.is_zero()
    }

    /// Submatrix selecting the given rows and columns, in order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", self.get(r, c) as u8)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The GF(2) matrix of a CNOT-only circuit restricted to its first `n` qubits.
///
/// Fails when a gate is not a CNOT or touches a qubit outside `0..n`.
pub fn circuit_to_matrix(c: &Circuit, n: usize) -> Result<Gf2Matrix> {
    let mut m = Gf2Matrix::identity(n);
    for op in c.ops() {
        match op.gate {
            Gate::Cnot { control, target } => {
                if control >= n || target >= n {
                    return Err(Error::DimensionMismatch(format!(
                        "cnot {control} {target} outside {n} qubits"
                    )));
                }
                m.xor_row(target, control);
            }
            ref g => return Err(Error::NonLinearGate(g.name().to_string())),
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_mul(a: &Gf2Matrix, b: &Gf2Matrix) -> Gf2Matrix {
        let mut out = Gf2Matrix::zeros(a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut s = false;
                for k in 0..a.cols() {
                    s ^= a.get(i, k) & b.get(k, j);
                }
                out.set(i, j, s);
            }
        }
        out
    }

    #[test]
    fn chain_matrix_inverse_is_bidiagonal() {
        let a = Gf2Matrix::from_rows(&[
            [1, 0, 0, 0, 0],
            [1, 1, 0, 0, 0],
            [1, 1, 1, 0, 0],
            [1, 1, 1, 1, 0],
            [1, 1, 1, 1, 1],
        ]);
        let inv = Gf2Matrix::from_rows(&[
            [1, 0, 0, 0, 0],
            [1, 1, 0, 0, 0],
            [0, 1, 1, 0, 0],
            [0, 0, 1, 1, 0],
            [0, 0, 0, 1, 1],
        ]);
        assert_eq!(a.inverse().unwrap(), inv);
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(a.is_unipotent());
    }

    #[test]
    fn product_matches_naive_triple_loop() {
        let a = Gf2Matrix::from_rows(&[[1, 0, 1], [0, 1, 1]]);
        let b = Gf2Matrix::from_rows(&[[1, 1], [0, 1], [1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), naive_mul(&a, &b));
        assert!(matches!(b.mul(&b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let m = Gf2Matrix::from_rows(&[[1, 1], [1, 1]]);
        assert_eq!(m.inverse(), Err(Error::SingularMatrix));
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().is_zero());
    }

    #[test]
    fn companion_of_x2_x_1_is_invertible_but_not_unipotent() {
        let m = Gf2Matrix::from_rows(&[[0, 1], [1, 1]]);
        assert!(m.inverse().is_ok());
        assert!(!m.is_unipotent());
    }

    #[test]
    fn wide_matrices_span_several_words() {
        let n = 130;
        let mut m = Gf2Matrix::identity(n);
        for i in 1..n {
            m.set(i, i - 1, true);
        }
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.get(n - 1, 0));
        assert_eq!(naive_mul(&m, &inv), Gf2Matrix::identity(n));
    }
}
