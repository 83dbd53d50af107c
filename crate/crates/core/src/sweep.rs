//! The gathering sweep: herd every set cell toward a destination point.
//!
//! One iteration rotates a 45° axis through the destination four times —
//! horizontal, main diagonal, vertical, anti-diagonal — and after each
//! rotation applies a direction rule to each half-plane so that content
//! moves toward the axis. Two movement modes exist:
//!
//! * **xor** — each phase is a plain synchronous hybrid XOR step with a
//!   region-constant assignment. The iteration is linear (superposition
//!   holds) but collisions annihilate and the frame loses content.
//! * **guarded** — each 1 moves one cell in its phase direction only when
//!   that strictly approaches the axis and the target is inside the grid
//!   and empty in the pre-phase grid; when several 1s claim one target,
//!   all of them stay. Population is conserved and the total Chebyshev
//!   distance to the destination never increases; every committed move
//!   strictly shrinks the pair (total Chebyshev, total taxicab distance),
//!   so repeated iterations settle into a fixed point: a compact block
//!   packed around the destination. This is the default for migration
//!   runs.
//!
//! The half-plane/rule pairing moves each side toward its axis. A literal
//! compatibility pairing that swaps the two main-diagonal rules (and puts
//! the axis lines in the leading region) is available behind
//! [`SweepConfig::literal_diagonals`].

use std::cmp::Ordering;

use crate::error::Error;
use crate::grid::Grid;
use crate::rule::Rule;
use crate::step::{step_hybrid, HybridSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    Xor,
    Guarded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    /// Gathering point, (row, column); must lie inside the grid.
    pub dest: (usize, usize),
    /// Axis rotation angle in degrees; only 45 is supported.
    pub angle_deg: u32,
    /// Iterations performed by [`sweep`].
    pub iterations: usize,
    pub mode: SweepMode,
    /// Use the literal axis-inclusive regions and swapped main-diagonal
    /// rule pair instead of the toward-axis pairing.
    pub literal_diagonals: bool,
}

impl SweepConfig {
    pub fn new(dest: (usize, usize), iterations: usize, mode: SweepMode) -> SweepConfig {
        SweepConfig {
            dest,
            angle_deg: 45,
            iterations,
            mode,
            literal_diagonals: false,
        }
    }

    /// Axis rotations per iteration: `360 / (2 * angle)`.
    pub fn rotations_per_iteration(&self) -> u32 {
        360 / (2 * self.angle_deg)
    }

    pub fn validate(&self, grid: &Grid) -> Result<(), Error> {
        if self.angle_deg != 45 {
            return Err(Error::UnsupportedAngle(self.angle_deg));
        }
        let (row, col) = self.dest;
        if row >= grid.rows() || col >= grid.cols() {
            return Err(Error::DestinationOutsideGrid {
                row,
                col,
                rows: grid.rows(),
                cols: grid.cols(),
            });
        }
        Ok(())
    }
}

/// Snapshot of how gathered a grid is around the destination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepMetrics {
    pub population: usize,
    /// Sum over set cells of the Chebyshev distance to the destination.
    pub total_distance: u64,
    /// Largest Chebyshev distance of any set cell (0 for an empty grid).
    pub radius: u64,
}

pub fn metrics(grid: &Grid, cfg: &SweepConfig) -> SweepMetrics {
    let (x, y) = (cfg.dest.0 as isize, cfg.dest.1 as isize);
    let mut population = 0;
    let mut total_distance = 0u64;
    let mut radius = 0u64;
    for (i, j) in grid.iter_ones() {
        let d = (i as isize - x).abs().max((j as isize - y).abs()) as u64;
        population += 1;
        total_distance += d;
        radius = radius.max(d);
    }
    SweepMetrics {
        population,
        total_distance,
        radius,
    }
}

/// The rule applied at `(i, j)` during `phase` (0..4). Rule 1 marks cells
/// that hold still (the axis lines of the toward-axis pairing).
fn phase_rule(phase: usize, literal: bool, dest: (usize, usize), i: usize, j: usize) -> Rule {
    let (x, y) = (dest.0 as isize, dest.1 as isize);
    let (i, j) = (i as isize, j as isize);
    let value = if literal {
        match phase {
            0 => {
                if i <= x {
                    128
                } else {
                    8
                }
            }
            1 => {
                if i - j <= x - y {
                    16
                } else {
                    256
                }
            }
            2 => {
                if j <= y {
                    32
                } else {
                    2
                }
            }
            3 => {
                if i + j <= x + y {
                    64
                } else {
                    4
                }
            }
            _ => unreachable!("four phases per iteration"),
        }
    } else {
        match phase {
            0 => match i.cmp(&x) {
                Ordering::Less => 128,
                Ordering::Greater => 8,
                Ordering::Equal => 1,
            },
            1 => match (i - j).cmp(&(x - y)) {
                Ordering::Less => 256,
                Ordering::Greater => 16,
                Ordering::Equal => 1,
            },
            2 => match j.cmp(&y) {
                Ordering::Less => 32,
                Ordering::Greater => 2,
                Ordering::Equal => 1,
            },
            3 => match (i + j).cmp(&(x + y)) {
                Ordering::Less => 64,
                Ordering::Greater => 4,
                Ordering::Equal => 1,
            },
            _ => unreachable!("four phases per iteration"),
        }
    };
    Rule::new(value).expect("phase rules are in range")
}

pub(crate) fn phase_spec(
    phase: usize,
    cfg: &SweepConfig,
    rows: usize,
    cols: usize,
) -> Result<HybridSpec, Error> {
    HybridSpec::from_fn(rows, cols, |i, j| {
        phase_rule(phase, cfg.literal_diagonals, cfg.dest, i, j)
    })
}

fn guarded_phase(grid: &Grid, phase: usize, cfg: &SweepConfig) -> Grid {
    let (rows, cols) = (grid.rows(), grid.cols());
    let (x, y) = (cfg.dest.0 as isize, cfg.dest.1 as isize);
    // Propose: each 1 wants to move one cell opposite its rule's read
    // offset (rule 128 reads the top neighbor, so content moves down).
    let mut movers: Vec<((usize, usize), (usize, usize))> = Vec::new();
    let mut claims = vec![0u8; rows * cols];
    for (i, j) in grid.iter_ones() {
        let rule = phase_rule(phase, cfg.literal_diagonals, cfg.dest, i, j);
        if rule == Rule::IDENTITY {
            continue;
        }
        // A diagonal step changes i-j or i+j by two, so a cell one off a
        // diagonal axis would only hop to the mirror cell, never getting
        // closer; such hops are not toward the axis and are skipped. This
        // is what makes guarded runs settle instead of flickering forever.
        if !cfg.literal_diagonals {
            let axis_distance = match phase {
                1 => ((i as isize - j as isize) - (x - y)).abs(),
                3 => ((i as isize + j as isize) - (x + y)).abs(),
                _ => 2,
            };
            if axis_distance < 2 {
                continue;
            }
        }
        let offset = rule.offsets()[0];
        let (ti, tj) = (
            i as isize - offset.dr as isize,
            j as isize - offset.dc as isize,
        );
        if ti < 0 || tj < 0 || ti as usize >= rows || tj as usize >= cols {
            continue; // a move off the frame never happens
        }
        let target = (ti as usize, tj as usize);
        if grid.get(ti, tj) {
            continue; // target occupied in the pre-phase grid
        }
        movers.push(((i, j), target));
        claims[target.0 * cols + target.1] = claims[target.0 * cols + target.1].saturating_add(1);
    }
    // Commit: only uniquely claimed targets move; contested claimants all
    // stay, which keeps the phase deterministic and order-independent.
    let mut out = grid.clone();
    for ((si, sj), (ti, tj)) in movers {
        if claims[ti * cols + tj] == 1 {
            out.set(si, sj, false);
            out.set(ti, tj, true);
        }
    }
    out
}

/// One full iteration: the four axis phases applied in order on successive
/// intermediate grids.
pub fn sweep_iteration(grid: &Grid, cfg: &SweepConfig) -> Result<Grid, Error> {
    cfg.validate(grid)?;
    let mut current = grid.clone();
    for phase in 0..cfg.rotations_per_iteration() as usize {
        current = match cfg.mode {
            SweepMode::Xor => {
                let spec = phase_spec(phase, cfg, grid.rows(), grid.cols())?;
                step_hybrid(&current, &spec)?
            }
            SweepMode::Guarded => guarded_phase(&current, phase, cfg),
        };
    }
    Ok(current)
}

/// Run `cfg.iterations` iterations, recording metrics for the initial grid
/// and after every iteration (`iterations + 1` entries).
pub fn sweep(grid: &Grid, cfg: &SweepConfig) -> Result<(Grid, Vec<SweepMetrics>), Error> {
    cfg.validate(grid)?;
    let mut history = Vec::with_capacity(cfg.iterations + 1);
    let mut current = grid.clone();
    history.push(metrics(&current, cfg));
    for _ in 0..cfg.iterations {
        current = sweep_iteration(&current, cfg)?;
        history.push(metrics(&current, cfg));
    }
    Ok((current, history))
}
