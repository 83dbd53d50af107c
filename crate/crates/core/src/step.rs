//! Synchronous stepping of uniform and hybrid linear rules.
//!
//! This is the semantic ground truth the rest of the crate is checked
//! against: the matrix path in [`crate::rulemat`] must agree with these
//! functions bit for bit. All reads come from the input grid and all
//! writes go to a fresh output grid; in-place sequential update would
//! change results and is deliberately impossible through this API.

use crate::error::{Error, ParseError};
use crate::grid::Grid;
use crate::rule::{Rule, WEIGHT_OFFSETS};

/// One synchronous step of `rule` applied at every cell, null boundary.
pub fn step_uniform(grid: &Grid, rule: Rule) -> Grid {
    let (rows, cols) = (grid.rows(), grid.cols());
    let mut out = Grid::new(rows, cols).expect("input grid is non-empty");
    for offset in rule.offsets() {
        for i in 0..rows {
            let src = i as isize + offset.dr as isize;
            if src < 0 || src as usize >= rows {
                continue;
            }
            let src_row: Vec<u64> = grid.row_words(src as usize).to_vec();
            xor_shifted_row(out.row_words_mut(i), &src_row, offset.dc);
        }
    }
    let mask = out.tail_mask();
    for i in 0..rows {
        let words = out.row_words_mut(i);
        if let Some(last) = words.last_mut() {
            *last &= mask;
        }
    }
    out
}

/// XOR `src` into `dst`, with `dst[j] ^= src[j + dc]` for `dc` in
/// `{-1, 0, +1}`. Bits brought in from past either end are zero.
fn xor_shifted_row(dst: &mut [u64], src: &[u64], dc: i32) {
    let words = dst.len();
    match dc {
        0 => {
            for w in 0..words {
                dst[w] ^= src[w];
            }
        }
        1 => {
            for w in 0..words {
                let hi = if w + 1 < words { src[w + 1] << 63 } else { 0 };
                dst[w] ^= (src[w] >> 1) | hi;
            }
        }
        -1 => {
            for w in 0..words {
                let lo = if w > 0 { src[w - 1] >> 63 } else { 0 };
                dst[w] ^= (src[w] << 1) | lo;
            }
        }
        _ => unreachable!("neighborhood offsets are at most one cell"),
    }
}

/// Per-cell rule assignment for hybrid stepping. A constant assignment is
/// semantically identical to the uniform rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HybridSpec {
    rows: usize,
    cols: usize,
    rules: Vec<Rule>,
}

impl HybridSpec {
    pub fn uniform(rows: usize, cols: usize, rule: Rule) -> Result<HybridSpec, Error> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyGrid);
        }
        Ok(HybridSpec {
            rows,
            cols,
            rules: vec![rule; rows * cols],
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Rule,
    ) -> Result<HybridSpec, Error> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyGrid);
        }
        let mut rules = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                rules.push(f(i, j));
            }
        }
        Ok(HybridSpec { rows, cols, rules })
    }

    /// One rule per row, applied across all of that row's cells.
    pub fn from_row_rules(row_rules: &[Rule], cols: usize) -> Result<HybridSpec, Error> {
        if row_rules.is_empty() || cols == 0 {
            return Err(Error::EmptyGrid);
        }
        HybridSpec::from_fn(row_rules.len(), cols, |i, _| row_rules[i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Rule {
        self.rules[row * self.cols + col]
    }

    /// Parse the rules-file format: one line per grid row, decimal rule
    /// numbers separated by whitespace.
    pub fn parse(text: &str) -> Result<HybridSpec, ParseError> {
        let mut rows: Vec<Vec<Rule>> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let mut row = Vec::new();
            for token in line.split_whitespace() {
                let rule: Rule = token
                    .parse()
                    .map_err(|e| ParseError::line(line_no, format!("{e}")))?;
                row.push(rule);
            }
            if let Some(first) = rows.first() {
                if row.len() != first.len() {
                    return Err(ParseError::line(
                        line_no,
                        format!("expected {} rule numbers, got {}", first.len(), row.len()),
                    ));
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(ParseError::line(1, "no rule numbers found".to_string()));
        }
        let cols = rows[0].len();
        HybridSpec::from_fn(rows.len(), cols, |i, j| rows[i][j])
            .map_err(|e| ParseError::line(1, format!("{e}")))
    }

    pub fn to_text(&self) -> String {
        let mut text = String::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    text.push(' ');
                }
                text.push_str(&self.get(i, j).to_string());
            }
            text.push('\n');
        }
        text
    }
}

/// One synchronous step with a per-cell rule assignment, null boundary.
pub fn step_hybrid(grid: &Grid, spec: &HybridSpec) -> Result<Grid, Error> {
    if (spec.rows(), spec.cols()) != (grid.rows(), grid.cols()) {
        return Err(Error::DimensionMismatch {
            context: "hybrid rule assignment",
            expected: format!("{}x{}", grid.rows(), grid.cols()),
            actual: format!("{}x{}", spec.rows(), spec.cols()),
        });
    }
    let (rows, cols) = (grid.rows(), grid.cols());
    let mut out = Grid::new(rows, cols)?;
    for i in 0..rows {
        for j in 0..cols {
            let mask = spec.get(i, j).value();
            let mut bit = false;
            for (k, offset) in WEIGHT_OFFSETS.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    bit ^= grid.get(
                        i as isize + offset.dr as isize,
                        j as isize + offset.dc as isize,
                    );
                }
            }
            if bit {
                out.set(i, j, true);
            }
        }
    }
    Ok(out)
}

/// `t`-fold composition of [`step_uniform`]; `t = 0` returns the input.
pub fn evolve(grid: &Grid, rule: Rule, t: usize) -> Grid {
    let mut current = grid.clone();
    for _ in 0..t {
        current = step_uniform(&current, rule);
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(v: u16) -> Rule {
        Rule::new(v).unwrap()
    }

    fn fig2_input() -> Grid {
        Grid::from_rows(&[vec![0, 0, 1, 0], vec![1, 1, 1, 0], vec![1, 0, 1, 1]]).unwrap()
    }

    /// Independent per-cell reference stepper, written directly from the
    /// weight table; deliberately shares no code with `step_uniform`.
    fn reference_step(cells: &[Vec<u8>], rule: u16) -> Vec<Vec<u8>> {
        let offsets: [(u16, i32, i32); 9] = [
            (1, 0, 0),
            (2, 0, 1),
            (4, 1, 1),
            (8, 1, 0),
            (16, 1, -1),
            (32, 0, -1),
            (64, -1, -1),
            (128, -1, 0),
            (256, -1, 1),
        ];
        let (m, n) = (cells.len() as i32, cells[0].len() as i32);
        let read = |i: i32, j: i32| -> u8 {
            if i < 0 || j < 0 || i >= m || j >= n {
                0
            } else {
                cells[i as usize][j as usize]
            }
        };
        (0..m)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        offsets
                            .iter()
                            .filter(|(w, _, _)| rule & w != 0)
                            .fold(0u8, |acc, &(_, dr, dc)| acc ^ read(i + dr, j + dc))
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn rule_170_worked_example() {
        let out = step_uniform(&fig2_input(), r(170));
        assert_eq!(
            out.to_rows(),
            vec![vec![1, 0, 1, 1], vec![0, 0, 1, 0], vec![1, 1, 0, 1]]
        );
    }

    #[test]
    fn rule_zero_clears_and_rule_one_is_identity() {
        let g = fig2_input();
        assert!(step_uniform(&g, Rule::ZERO).is_empty());
        assert_eq!(step_uniform(&g, Rule::IDENTITY), g);
    }

    #[test]
    fn rule_8_shifts_content_up() {
        let g = Grid::random(5, 9, 0.5, 11).unwrap();
        assert_eq!(step_uniform(&g, r(8)), g.shifted(-1, 0));
    }

    #[test]
    fn hybrid_rows_2_3_4_worked_example() {
        let spec = HybridSpec::from_row_rules(&[r(2), r(3), r(4)], 4).unwrap();
        let out = step_hybrid(&fig2_input(), &spec).unwrap();
        assert_eq!(
            out.to_rows(),
            vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 0]]
        );
    }

    #[test]
    fn hybrid_rejects_dimension_mismatch() {
        let spec = HybridSpec::uniform(2, 2, r(1)).unwrap();
        assert!(matches!(
            step_hybrid(&fig2_input(), &spec),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn evolve_zero_steps_is_identity() {
        let g = Grid::random(4, 4, 0.5, 3).unwrap();
        assert_eq!(evolve(&g, r(170), 0), g);
    }

    #[test]
    fn rule_8_pushes_everything_past_the_top() {
        let g = Grid::random(6, 5, 0.8, 9).unwrap();
        assert!(evolve(&g, r(8), 6).is_empty());
        assert!(!evolve(&g, r(8), 5).is_empty());
    }

    #[test]
    fn rules_file_round_trip() {
        let spec = HybridSpec::from_row_rules(&[r(2), r(3), r(4)], 4).unwrap();
        let text = spec.to_text();
        assert_eq!(HybridSpec::parse(&text).unwrap(), spec);
        assert!(HybridSpec::parse("2 3\n4\n").is_err());
        assert!(HybridSpec::parse("900\n").is_err());
        assert!(HybridSpec::parse("").is_err());
    }

    proptest! {
        #[test]
        fn matches_reference_stepper(
            rule in 0u16..512,
            rows in 1usize..7,
            cols in 1usize..70,
            seed in any::<u64>(),
        ) {
            let g = Grid::random(rows, cols, 0.5, seed).unwrap();
            let expected = reference_step(&g.to_rows(), rule);
            prop_assert_eq!(step_uniform(&g, r(rule)).to_rows(), expected);
        }

        #[test]
        fn stepping_is_linear(
            rule in 0u16..512,
            seed_a in any::<u64>(),
            seed_b in any::<u64>(),
        ) {
            let a = Grid::random(5, 6, 0.5, seed_a).unwrap();
            let b = Grid::random(5, 6, 0.5, seed_b).unwrap();
            let lhs = step_uniform(&(&a ^ &b), r(rule));
            let rhs = &step_uniform(&a, r(rule)) ^ &step_uniform(&b, r(rule));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn hybrid_stepping_is_linear(seed_a in any::<u64>(), seed_b in any::<u64>(), spec_seed in any::<u64>()) {
            let mut state = spec_seed;
            let spec = HybridSpec::from_fn(4, 5, |_, _| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                r((state >> 33) as u16 % 512)
            }).unwrap();
            let a = Grid::random(4, 5, 0.5, seed_a).unwrap();
            let b = Grid::random(4, 5, 0.5, seed_b).unwrap();
            let lhs = step_hybrid(&(&a ^ &b), &spec).unwrap();
            let rhs = &step_hybrid(&a, &spec).unwrap() ^ &step_hybrid(&b, &spec).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn constant_hybrid_equals_uniform(rule in 0u16..512, seed in any::<u64>()) {
            let g = Grid::random(4, 6, 0.5, seed).unwrap();
            let spec = HybridSpec::uniform(4, 6, r(rule)).unwrap();
            prop_assert_eq!(step_hybrid(&g, &spec).unwrap(), step_uniform(&g, r(rule)));
        }

        #[test]
        fn zero_grid_is_a_fixed_point(rule in 0u16..512) {
            let zero = Grid::new(4, 5).unwrap();
            prop_assert!(step_uniform(&zero, r(rule)).is_empty());
        }

        #[test]
        fn padding_with_a_zero_frame_does_not_change_the_interior(
            rule in 0u16..512,
            seed in any::<u64>(),
        ) {
            let g = Grid::random(4, 5, 0.5, seed).unwrap();
            let padded = Grid::from_fn(6, 7, |i, j| {
                i >= 1 && j >= 1 && g.get(i as isize - 1, j as isize - 1)
            }).unwrap();
            let stepped = step_uniform(&g, r(rule));
            let stepped_padded = step_uniform(&padded, r(rule));
            let interior = Grid::from_fn(4, 5, |i, j| {
                stepped_padded.get(i as isize + 1, j as isize + 1)
            }).unwrap();
            prop_assert_eq!(stepped, interior);
        }
    }
}
