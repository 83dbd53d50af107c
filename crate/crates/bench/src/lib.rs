//! Shared input builders for the benchmark targets.

use ca2d::{Grid, Rule};

pub fn rule(value: u16) -> Rule {
    Rule::new(value).expect("bench rules are in range")
}

/// Half-density grid, fixed seed.
pub fn dense_grid(rows: usize, cols: usize) -> Grid {
    Grid::random(rows, cols, 0.5, 0xca2d).expect("bench dimensions are valid")
}

/// Sparse scatter of roughly `ones` set cells.
pub fn scatter(rows: usize, cols: usize, ones: usize) -> Grid {
    let density = ones as f64 / (rows * cols) as f64;
    Grid::random(rows, cols, density, 0xca2d).expect("bench dimensions are valid")
}
