//! Dense bit-packed matrices over GF(2).
//!
//! Row-major storage, one bit per entry, arithmetic modulo 2. Sized for
//! the `mn x mn` rule matrices of desk-scale grids: a 100x100 grid gives a
//! 10000x10000 matrix, about 12.5 MB.

use std::fmt;

use crate::error::{Error, ParseError};

const WORD_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    /// All-zero matrix.
    pub fn new(rows: usize, cols: usize) -> BitMatrix {
        let words_per_row = cols.div_ceil(WORD_BITS).max(1);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(side: usize) -> BitMatrix {
        let mut mat = BitMatrix::new(side, side);
        for i in 0..side {
            mat.set(i, i, true);
        }
        mat
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

    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols, "entry out of range");
        self.bits[row * self.words_per_row + col / WORD_BITS] >> (col % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.rows && col < self.cols, "entry out of range");
        let word = &mut self.bits[row * self.words_per_row + col / WORD_BITS];
        if value {
            *word |= 1 << (col % WORD_BITS);
        } else {
            *word &= !(1 << (col % WORD_BITS));
        }
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == BitMatrix::identity(self.rows)
    }

    /// Column indices of the set entries of one row, ascending.
    pub fn row_ones(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        let words = self.row_words(row);
        (0..self.words_per_row).flat_map(move |w| {
            let mut word = words[w];
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * WORD_BITS + bit)
            })
        })
    }

    /// Entrywise sum modulo 2.
    pub fn add(&self, rhs: &BitMatrix) -> Result<BitMatrix, Error> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch {
                context: "matrix addition",
                expected: format!("{}x{}", self.rows, self.cols),
                actual: format!("{}x{}", rhs.rows, rhs.cols),
            });
        }
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&rhs.bits) {
            *a ^= b;
        }
        Ok(out)
    }

    /// Matrix product over GF(2): row i of the result is the XOR of the
    /// rows of `rhs` selected by the set bits of row i of `self`.
    pub fn multiply(&self, rhs: &BitMatrix) -> Result<BitMatrix, Error> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix multiplication",
                expected: format!("{} rows on the right", self.cols),
                actual: format!("{} rows", rhs.rows),
            });
        }
        let mut out = BitMatrix::new(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in self.row_ones(i).collect::<Vec<_>>() {
                let start = i * out.words_per_row;
                let rhs_row = rhs.row_words(k);
                for (w, &word) in rhs_row.iter().enumerate() {
                    out.bits[start + w] ^= word;
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::new(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_ones(i).collect::<Vec<_>>() {
                out.set(j, i, true);
            }
        }
        out
    }

    /// Rank over GF(2) by Gaussian elimination on a working copy.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let mut rank = 0;
        for col in 0..work.cols {
            let pivot = (rank..work.rows).find(|&i| work.get(i, col));
            let Some(pivot) = pivot else { continue };
            work.swap_rows(rank, pivot);
            for i in rank + 1..work.rows {
                if work.get(i, col) {
                    work.xor_row(i, rank);
                }
            }
            rank += 1;
            if rank == work.rows {
                break;
            }
        }
        rank
    }

    /// Inverse over GF(2) by Gauss-Jordan elimination. Non-square input is
    /// rejected; singular input reports [`Error::Singular`].
    pub fn inverse(&self) -> Result<BitMatrix, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let side = self.rows;
        let mut work = self.clone();
        let mut inv = BitMatrix::identity(side);
        for col in 0..side {
            let pivot = (col..side)
                .find(|&i| work.get(i, col))
                .ok_or(Error::Singular)?;
            work.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            for i in 0..side {
                if i != col && work.get(i, col) {
                    work.xor_row(i, col);
                    inv.xor_row(i, col);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words_per_row;
        for k in 0..w {
            self.bits.swap(a * w + k, b * w + k);
        }
    }

    fn xor_row(&mut self, dst: usize, src: usize) {
        let w = self.words_per_row;
        for k in 0..w {
            let v = self.bits[src * w + k];
            self.bits[dst * w + k] ^= v;
        }
    }

    pub(crate) fn row_words(&self, row: usize) -> &[u64] {
        &self.bits[row * self.words_per_row..(row + 1) * self.words_per_row]
    }

    /// Text form: first line `rows cols`, then one 0/1 row per line with no
    /// separators.
    pub fn to_text(&self) -> String {
        let mut text = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                text.push(if self.get(i, j) { '1' } else { '0' });
            }
            text.push('\n');
        }
        text
    }

    pub fn parse_text(text: &str) -> Result<BitMatrix, ParseError> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| ParseError::line(1, "missing `rows cols` header"))?;
        let mut parts = header.split_whitespace();
        let rows: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| ParseError::line(1, "missing or malformed row count"))?;
        let cols: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| ParseError::line(1, "missing or malformed column count"))?;
        if parts.next().is_some() {
            return Err(ParseError::line(1, "trailing tokens after `rows cols`"));
        }
        if rows == 0 || cols == 0 {
            return Err(ParseError::line(1, "matrix dimensions must be positive"));
        }
        let mut mat = BitMatrix::new(rows, cols);
        for i in 0..rows {
            let line_no = i + 2;
            let line = lines
                .next()
                .ok_or_else(|| ParseError::line(line_no, format!("expected {rows} rows")))?;
            if line.len() != cols {
                return Err(ParseError::line(
                    line_no,
                    format!("expected {cols} digits, got {}", line.len()),
                ));
            }
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => mat.set(i, j, true),
                    other => {
                        return Err(ParseError::line(
                            line_no,
                            format!("invalid digit {other:?} at column {}", j + 1),
                        ))
                    }
                }
            }
        }
        if let Some(extra) = lines.next() {
            if !extra.trim().is_empty() {
                return Err(ParseError::line(rows + 2, "trailing data after matrix"));
            }
        }
        Ok(mat)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}", self.to_text())
    }
}
