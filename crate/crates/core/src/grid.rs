//! Binary grids with null-boundary semantics.
//!
//! Cells outside the `m x n` frame read as 0 and never fail; everything
//! outside the frame is lost on writes. Rows are bit-packed into `u64`
//! words (column `j` lives at bit `j % 64` of word `j / 64`), with the
//! invariant that padding bits past the last column are always zero.

use std::fmt;
use std::ops::BitXor;

use crate::error::Error;

const WORD_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Grid {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl Grid {
    /// All-zero grid. Empty dimensions are rejected.
    pub fn new(rows: usize, cols: usize) -> Result<Grid, Error> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyGrid);
        }
        let words_per_row = cols.div_ceil(WORD_BITS);
        Ok(Grid {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> bool,
    ) -> Result<Grid, Error> {
        let mut grid = Grid::new(rows, cols)?;
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    grid.set(i, j, true);
                }
            }
        }
        Ok(grid)
    }

    /// Build from explicit 0/1 rows; rows must be rectangular and non-empty.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Grid, Error> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::EmptyGrid);
        }
        let cols = rows[0].len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "grid rows",
                    expected: format!("{cols} columns"),
                    actual: format!("{} columns", row.len()),
                });
            }
            for &v in row {
                if v > 1 {
                    return Err(Error::NotABit(v));
                }
            }
        }
        Grid::from_fn(rows.len(), cols, |i, j| rows[i][j] == 1)
    }

    /// Deterministic pseudo-random fill driven by SplitMix64: the same
    /// `(rows, cols, density, seed)` produces the same grid on every
    /// platform.
    pub fn random(rows: usize, cols: usize, density: f64, seed: u64) -> Result<Grid, Error> {
        if !(0.0..=1.0).contains(&density) {
            return Err(Error::BadDensity(density));
        }
        let mut state = seed;
        Grid::from_fn(rows, cols, |_, _| {
            let v = splitmix64(&mut state);
            // 53-bit uniform in [0, 1): density 0 keeps every cell clear,
            // density 1 sets them all.
            ((v >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < density
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Null-boundary read: any coordinate outside the grid is 0.
    pub fn get(&self, row: isize, col: isize) -> bool {
        if row < 0 || col < 0 || row as usize >= self.rows || col as usize >= self.cols {
            return false;
        }
        let (row, col) = (row as usize, col as usize);
        self.bits[row * self.words_per_row + col / WORD_BITS] >> (col % WORD_BITS) & 1 == 1
    }

    /// In-range write; panics on out-of-range coordinates.
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.rows && col < self.cols, "cell out of range");
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

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Coordinates of all set cells in row-major order.
    pub fn iter_ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |i| {
            let words = self.row_words(i);
            (0..self.words_per_row).flat_map(move |w| {
                let mut word = words[w];
                std::iter::from_fn(move || {
                    if word == 0 {
                        return None;
                    }
                    let bit = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some((i, w * WORD_BITS + bit))
                })
            })
        })
    }

    /// Cell-wise XOR; both grids must have the same dimensions.
    pub fn xor_in_place(&mut self, rhs: &Grid) {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "grid dimensions differ"
        );
        for (a, b) in self.bits.iter_mut().zip(&rhs.bits) {
            *a ^= b;
        }
    }

    /// Content translated by `(dr, dc)`: cell `(i, j)` of the result holds
    /// the value of `(i - dr, j - dc)`. Content shifted past the frame is
    /// lost; vacated cells are zero.
    pub fn shifted(&self, dr: isize, dc: isize) -> Grid {
        let mut out = Grid::new(self.rows, self.cols).expect("non-empty by construction");
        for (i, j) in self.iter_ones() {
            let (ni, nj) = (i as isize + dr, j as isize + dc);
            if ni >= 0 && nj >= 0 && (ni as usize) < self.rows && (nj as usize) < self.cols {
                out.set(ni as usize, nj as usize, true);
            }
        }
        out
    }

    /// Tight bounding box of the set cells as `(row0, col0, row1, col1)`
    /// (inclusive), or `None` for an all-zero grid.
    pub fn bounding_box(&self) -> Option<(usize, usize, usize, usize)> {
        let mut bounds: Option<(usize, usize, usize, usize)> = None;
        for (i, j) in self.iter_ones() {
            bounds = Some(match bounds {
                None => (i, j, i, j),
                Some((r0, c0, r1, c1)) => (r0.min(i), c0.min(j), r1.max(i), c1.max(j)),
            });
        }
        bounds
    }

    /// 0/1 rows, mostly for tests and debugging output.
    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i as isize, j as isize) as u8)
                    .collect()
            })
            .collect()
    }

    pub(crate) fn row_words(&self, row: usize) -> &[u64] {
        &self.bits[row * self.words_per_row..(row + 1) * self.words_per_row]
    }

    pub(crate) fn row_words_mut(&mut self, row: usize) -> &mut [u64] {
        &mut self.bits[row * self.words_per_row..(row + 1) * self.words_per_row]
    }

    /// Mask selecting the in-range bits of the last word of a row.
    pub(crate) fn tail_mask(&self) -> u64 {
        let rem = self.cols % WORD_BITS;
        if rem == 0 {
            u64::MAX
        } else {
            (1u64 << rem) - 1
        }
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl BitXor<&Grid> for &Grid {
    type Output = Grid;

    fn bitxor(self, rhs: &Grid) -> Grid {
        let mut out = self.clone();
        out.xor_in_place(rhs);
        out
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{}", self.get(i as isize, j as isize) as u8)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Grid {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_dimensions() {
        assert_eq!(Grid::new(0, 5), Err(Error::EmptyGrid));
        assert_eq!(Grid::new(5, 0), Err(Error::EmptyGrid));
        assert!(Grid::new(1, 1).is_ok());
    }

    #[test]
    fn null_boundary_reads() {
        let mut g = Grid::new(2, 3).unwrap();
        g.set(1, 2, true);
        assert!(g.get(1, 2));
        assert!(!g.get(-1, 0));
        assert!(!g.get(0, -1));
        assert!(!g.get(2, 0));
        assert!(!g.get(0, 3));
        assert!(!g.get(isize::MAX, isize::MAX));
    }

    #[test]
    fn from_rows_validates() {
        assert!(Grid::from_rows(&[vec![0, 1], vec![1, 0]]).is_ok());
        assert_eq!(Grid::from_rows(&[]), Err(Error::EmptyGrid));
        assert_eq!(Grid::from_rows(&[vec![0, 2]]), Err(Error::NotABit(2)));
        assert!(matches!(
            Grid::from_rows(&[vec![0, 1], vec![1]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn iter_ones_and_count_agree_across_word_boundaries() {
        let g = Grid::from_fn(3, 130, |i, j| (i + j) % 7 == 0).unwrap();
        let listed: Vec<_> = g.iter_ones().collect();
        assert_eq!(listed.len(), g.count_ones());
        for &(i, j) in &listed {
            assert!(g.get(i as isize, j as isize));
        }
        let mut expected = Vec::new();
        for i in 0..3 {
            for j in 0..130 {
                if (i + j) % 7 == 0 {
                    expected.push((i, j));
                }
            }
        }
        assert_eq!(listed, expected);
    }

    #[test]
    fn shifted_drops_content_at_the_frame() {
        let g = Grid::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        let up = g.shifted(-1, 0);
        assert_eq!(up.to_rows(), vec![vec![0, 1], vec![0, 0]]);
        let far = g.shifted(5, 5);
        assert!(far.is_empty());
    }

    #[test]
    fn random_density_extremes() {
        let zeros = Grid::random(8, 8, 0.0, 42).unwrap();
        assert!(zeros.is_empty());
        let ones = Grid::random(8, 8, 1.0, 42).unwrap();
        assert_eq!(ones.count_ones(), 64);
        assert_eq!(Grid::random(8, 8, 1.5, 42), Err(Error::BadDensity(1.5)));
    }

    #[test]
    fn random_is_reproducible() {
        let a = Grid::random(16, 33, 0.4, 7).unwrap();
        let b = Grid::random(16, 33, 0.4, 7).unwrap();
        assert_eq!(a, b);
        let c = Grid::random(16, 33, 0.4, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn random_golden_grid_is_stable() {
        // Frozen output of SplitMix64 at seed 42, density 0.5; a change
        // here means seeded runs are no longer portable.
        let golden = vec![
            vec![0, 1, 1, 1, 1, 0, 1, 0],
            vec![1, 0, 1, 1, 0, 0, 0, 1],
            vec![1, 1, 1, 0, 0, 1, 0, 0],
            vec![1, 1, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 1, 1, 0, 1],
            vec![0, 1, 1, 0, 0, 1, 1, 1],
            vec![0, 0, 1, 1, 1, 1, 1, 0],
            vec![0, 0, 0, 1, 1, 0, 0, 1],
        ];
        assert_eq!(Grid::random(8, 8, 0.5, 42).unwrap().to_rows(), golden);
    }

    #[test]
    fn bounding_box() {
        let mut g = Grid::new(10, 10).unwrap();
        assert_eq!(g.bounding_box(), None);
        g.set(2, 3, true);
        g.set(7, 5, true);
        assert_eq!(g.bounding_box(), Some((2, 3, 7, 5)));
    }

    #[test]
    fn xor_is_cellwise() {
        let a = Grid::from_rows(&[vec![1, 1, 0]]).unwrap();
        let b = Grid::from_rows(&[vec![0, 1, 1]]).unwrap();
        assert_eq!((&a ^ &b).to_rows(), vec![vec![1, 0, 1]]);
    }
}
