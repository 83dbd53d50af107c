//! Image-level behaviors of the group-1 and hybrid rules: rigid
//! translation, multi-copy replication at power-of-two step counts, and
//! the four-region procedures for zooming, thickening and thinning.

use std::str::FromStr;

use crate::error::Error;
use crate::grid::Grid;
use crate::rule::Rule;
use crate::step::{evolve, step_hybrid, HybridSpec};

/// Compass direction of content movement. Each direction is produced by
/// the group-1 rule reading the opposite neighbor: rule 8 reads the cell
/// below, so content travels up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Top,
    Bottom,
    Left,
    Right,
    TopLeft,
    TopRight,
    BottomLeft,
    BottomRight,
}

impl Direction {
    pub const ALL: [Direction; 8] = [
        Direction::Top,
        Direction::Bottom,
        Direction::Left,
        Direction::Right,
        Direction::TopLeft,
        Direction::TopRight,
        Direction::BottomLeft,
        Direction::BottomRight,
    ];

    /// The group-1 rule that moves content one cell this way.
    pub fn rule(self) -> Rule {
        let value = match self {
            Direction::Top => 8,
            Direction::Bottom => 128,
            Direction::Left => 2,
            Direction::Right => 32,
            Direction::TopLeft => 4,
            Direction::TopRight => 16,
            Direction::BottomLeft => 256,
            Direction::BottomRight => 64,
        };
        Rule::new(value).expect("table rules are in range")
    }

    /// Unit displacement of the content, `(dr, dc)`.
    pub fn delta(self) -> (isize, isize) {
        match self {
            Direction::Top => (-1, 0),
            Direction::Bottom => (1, 0),
            Direction::Left => (0, -1),
            Direction::Right => (0, 1),
            Direction::TopLeft => (-1, -1),
            Direction::TopRight => (-1, 1),
            Direction::BottomLeft => (1, -1),
            Direction::BottomRight => (1, 1),
        }
    }

    pub fn opposite(self) -> Direction {
        match self {
            Direction::Top => Direction::Bottom,
            Direction::Bottom => Direction::Top,
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
            Direction::TopLeft => Direction::BottomRight,
            Direction::TopRight => Direction::BottomLeft,
            Direction::BottomLeft => Direction::TopRight,
            Direction::BottomRight => Direction::TopLeft,
        }
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Direction, String> {
        match s.to_ascii_lowercase().as_str() {
            "top" | "up" => Ok(Direction::Top),
            "bottom" | "down" => Ok(Direction::Bottom),
            "left" => Ok(Direction::Left),
            "right" => Ok(Direction::Right),
            "top-left" | "topleft" => Ok(Direction::TopLeft),
            "top-right" | "topright" => Ok(Direction::TopRight),
            "bottom-left" | "bottomleft" => Ok(Direction::BottomLeft),
            "bottom-right" | "bottomright" => Ok(Direction::BottomRight),
            other => Err(format!("unknown direction {other:?}")),
        }
    }
}

/// Translate by `t` cells: `t` applications of the direction's group-1
/// rule. Content pushed past the frame is lost.
pub fn translate(grid: &Grid, direction: Direction, t: usize) -> Grid {
    evolve(grid, direction.rule(), t)
}

/// Predicted result of running `rule` for `2^k` steps: the XOR of the
/// image translated by `2^k` times each of the rule's offsets (a neighbor
/// at offset `d` moves content by `-d`). When the translated copies stay
/// inside the frame this equals `evolve(grid, rule, 2^k)` exactly, and
/// when they are also pairwise disjoint the image appears in
/// `rule.group()` copies.
pub fn replicate_prediction(grid: &Grid, rule: Rule, k: u32) -> Grid {
    let steps = 1isize << k;
    let mut out = Grid::new(grid.rows(), grid.cols()).expect("input grid is non-empty");
    for offset in rule.offsets() {
        let copy = grid.shifted(-steps * offset.dr as isize, -steps * offset.dc as isize);
        out.xor_in_place(&copy);
    }
    out
}

/// Exact preconditions of the replication law for a given run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReplicationCheck {
    /// Every translated copy kept all of the image's cells.
    pub copies_in_bounds: bool,
    /// No two translated copies overlap.
    pub copies_disjoint: bool,
}

pub fn replication_check(grid: &Grid, rule: Rule, k: u32) -> ReplicationCheck {
    let steps = 1isize << k;
    let population = grid.count_ones();
    let copies: Vec<Grid> = rule
        .offsets()
        .into_iter()
        .map(|o| grid.shifted(-steps * o.dr as isize, -steps * o.dc as isize))
        .collect();
    let copies_in_bounds = copies.iter().all(|c| c.count_ones() == population);
    let mut copies_disjoint = true;
    for (i, a) in copies.iter().enumerate() {
        for b in &copies[i + 1..] {
            let mut union = a.clone();
            union.xor_in_place(b);
            if union.count_ones() != a.count_ones() + b.count_ones() {
                copies_disjoint = false;
            }
        }
    }
    ReplicationCheck {
        copies_in_bounds,
        copies_disjoint,
    }
}

/// Four-region split used by [`hybrid4`]: A = columns left of
/// `split_col`, B = the rest; C = rows above `split_row`, D = the rest.
/// The split line itself belongs to the right/bottom region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionPartition {
    pub split_row: usize,
    pub split_col: usize,
}

impl RegionPartition {
    /// Split at the grid center.
    pub fn centered(rows: usize, cols: usize) -> RegionPartition {
        RegionPartition {
            split_row: rows / 2,
            split_col: cols / 2,
        }
    }
}

/// Two-phase four-region procedure: first one synchronous hybrid step
/// applying `a` to region A and `b` to region B, then a second step
/// applying `c` to region C and `d` to region D of the intermediate grid.
pub fn hybrid4(
    grid: &Grid,
    a: Rule,
    b: Rule,
    c: Rule,
    d: Rule,
    part: RegionPartition,
) -> Result<Grid, Error> {
    let (rows, cols) = (grid.rows(), grid.cols());
    let columns = HybridSpec::from_fn(rows, cols, |_, j| if j < part.split_col { a } else { b })?;
    let mid = step_hybrid(grid, &columns)?;
    let bands = HybridSpec::from_fn(rows, cols, |i, _| if i < part.split_row { c } else { d })?;
    step_hybrid(&mid, &bands)
}

/// Named four-region rule assignments for the shape transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourRegionOp {
    ZoomIn,
    ZoomOut,
    ThickenHorizontal,
    ThinHorizontal,
    ThickenVertical,
    ThinVertical,
}

impl FourRegionOp {
    /// The `(a, b, c, d)` rule quadruple, regions as in [`RegionPartition`].
    pub fn rules(self) -> [Rule; 4] {
        let values = match self {
            FourRegionOp::ZoomIn => [2u16, 32, 8, 128],
            FourRegionOp::ZoomOut => [32, 2, 128, 8],
            FourRegionOp::ThickenHorizontal => [2, 32, 1, 1],
            FourRegionOp::ThinHorizontal => [32, 2, 1, 1],
            FourRegionOp::ThickenVertical => [1, 1, 8, 128],
            FourRegionOp::ThinVertical => [1, 1, 128, 8],
        };
        values.map(|v| Rule::new(v).expect("table rules are in range"))
    }

    pub fn apply(self, grid: &Grid, part: RegionPartition) -> Result<Grid, Error> {
        let [a, b, c, d] = self.rules();
        hybrid4(grid, a, b, c, d, part)
    }
}

/// Deterministic seed images, placed centered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeedShape {
    /// Cells within Euclidean distance `radius` of the center.
    Circle { radius: usize },
    /// Filled axis-aligned square.
    Square { side: usize },
    /// Filled axis-aligned block, `height` rows by `width` columns.
    Rectangle { height: usize, width: usize },
    /// Union of a horizontal and a vertical bar, each `length` long and
    /// `breadth` wide.
    Plus { length: usize, breadth: usize },
    /// Arbitrary stamp, centered on the canvas.
    Custom(Grid),
}

/// Rasterize a shape onto an `rows x cols` canvas. Shapes that do not fit
/// are rejected.
pub fn seed(shape: &SeedShape, rows: usize, cols: usize) -> Result<Grid, Error> {
    let too_large = Error::ShapeTooLarge { rows, cols };
    let centered_block = |height: usize, width: usize| -> Result<(usize, usize), Error> {
        if height == 0 || width == 0 || height > rows || width > cols {
            return Err(too_large.clone());
        }
        Ok(((rows - height) / 2, (cols - width) / 2))
    };
    match shape {
        SeedShape::Circle { radius } => {
            let (ci, cj) = (rows / 2, cols / 2);
            if ci < *radius || cj < *radius || ci + radius >= rows || cj + radius >= cols {
                return Err(too_large);
            }
            let r2 = (radius * radius) as isize;
            Grid::from_fn(rows, cols, |i, j| {
                let (di, dj) = (i as isize - ci as isize, j as isize - cj as isize);
                di * di + dj * dj <= r2
            })
        }
        SeedShape::Square { side } => {
            let (top, left) = centered_block(*side, *side)?;
            Grid::from_fn(rows, cols, |i, j| {
                i >= top && i < top + side && j >= left && j < left + side
            })
        }
        SeedShape::Rectangle { height, width } => {
            let (top, left) = centered_block(*height, *width)?;
            Grid::from_fn(rows, cols, |i, j| {
                i >= top && i < top + height && j >= left && j < left + width
            })
        }
        SeedShape::Plus { length, breadth } => {
            let (htop, hleft) = centered_block(*breadth, *length)?;
            let (vtop, vleft) = centered_block(*length, *breadth)?;
            Grid::from_fn(rows, cols, |i, j| {
                (i >= htop && i < htop + breadth && j >= hleft && j < hleft + length)
                    || (i >= vtop && i < vtop + length && j >= vleft && j < vleft + breadth)
            })
        }
        SeedShape::Custom(stamp) => {
            let (top, left) = centered_block(stamp.rows(), stamp.cols())?;
            Grid::from_fn(rows, cols, |i, j| {
                i >= top && j >= left && stamp.get((i - top) as isize, (j - left) as isize)
            })
        }
    }
}

/// Number of 8-connected components of set cells.
pub fn connected_components(grid: &Grid) -> usize {
    let mut seen = vec![false; grid.rows() * grid.cols()];
    let flat = |i: usize, j: usize| i * grid.cols() + j;
    let mut components = 0;
    let mut stack = Vec::new();
    for (i, j) in grid.iter_ones() {
        if seen[flat(i, j)] {
            continue;
        }
        components += 1;
        seen[flat(i, j)] = true;
        stack.push((i, j));
        while let Some((ci, cj)) = stack.pop() {
            for dr in -1isize..=1 {
                for dc in -1isize..=1 {
                    let (ni, nj) = (ci as isize + dr, cj as isize + dc);
                    if grid.get(ni, nj) && !seen[flat(ni as usize, nj as usize)] {
                        seen[flat(ni as usize, nj as usize)] = true;
                        stack.push((ni as usize, nj as usize));
                    }
                }
            }
        }
    }
    components
}
