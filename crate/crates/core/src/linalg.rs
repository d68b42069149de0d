//! Bit-packed vectors and matrices over F2 with Gaussian elimination.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
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
        assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(n, w)| n * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Concatenation `[self | other]`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    pub fn slice(&self, start: usize, end: usize) -> BitVec {
        let mut out = BitVec::zeros(end - start);
        for i in start..end {
            if self.get(i) {
                out.set(i - start, true);
            }
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// A dense matrix over F2 stored by rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows: vec![BitVec::zeros(cols); rows],
            cols,
        }
    }

    pub fn from_rows(rows: Vec<BitVec>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        BitMatrix { rows, cols }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[BitVec], rows: usize) -> Self {
        let mut m = BitMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in c.ones() {
                m.rows[i].set(j, true);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> BitVec {
        let mut c = BitVec::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.get(j) {
                c.set(i, true);
            }
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> BitMatrix {
        let cols: Vec<BitVec> = self.rows.clone();
        BitMatrix::from_columns(&cols, self.cols)
    }

    /// `self * other`; panics on shape mismatch.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.nrows(), "shape mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVec::zeros(other.cols);
                for k in r.ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        BitMatrix::from_rows(rows, other.cols)
    }

    pub fn apply(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols);
        let mut out = BitVec::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            let mut parity = false;
            for (a, b) in r.words.iter().zip(&v.words) {
                parity ^= (a & b).count_ones() % 2 == 1;
            }
            out.set(i, parity);
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut span = EchelonSpan::new(self.cols);
        self.rows.iter().filter(|r| span.insert(r)).count()
    }

    /// A basis of `{v : self * v = 0}`.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        // Row-reduce the columns, tracking which combination of domain basis
        // vectors produced each reduced column.
        let n = self.cols;
        let mut pivots: Vec<(usize, BitVec, BitVec)> = Vec::new();
        let mut kernel = Vec::new();
        for j in 0..n {
            let mut image = self.column(j);
            let mut combo = BitVec::unit(n, j);
            for (p, v, c) in &pivots {
                if image.get(*p) {
                    image.xor_assign(v);
                    combo.xor_assign(c);
                }
            }
            match image.first_one() {
                Some(p) => {
                    for (_, v, c) in pivots.iter_mut() {
                        if v.get(p) {
                            v.xor_assign(&image);
                            c.xor_assign(&combo);
                        }
                    }
                    pivots.push((p, image, combo));
                }
                None => kernel.push(combo),
            }
        }
        kernel
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{}", self.nrows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "{r:?}")?;
        }
        Ok(())
    }
}

/// Incrementally built reduced echelon basis of a subspace of F2^n.
#[derive(Clone, Debug)]
pub struct EchelonSpan {
    dim: usize,
    pivots: Vec<(usize, BitVec)>,
}

impl EchelonSpan {
    pub fn new(dim: usize) -> Self {
        EchelonSpan {
            dim,
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, v: &BitVec) -> BitVec {
        let mut r = v.clone();
        for (p, row) in &self.pivots {
            if r.get(*p) {
                r.xor_assign(row);
            }
        }
        r
    }

    /// Adds `v`; returns whether it was independent of the span so far.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.dim);
        let r = self.reduce(v);
        let Some(p) = r.first_one() else {
            return false;
        };
        for (_, row) in self.pivots.iter_mut() {
            if row.get(p) {
                row.xor_assign(&r);
            }
        }
        self.pivots.push((p, r));
        true
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }
}
