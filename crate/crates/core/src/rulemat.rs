//! Rule matrices: the GF(2) matrices whose product with a row-major
//! flattened grid performs one synchronous step.
//!
//! Every rule has an `mn x mn` matrix for an `m x n` grid. The defining
//! property is semantic — `apply(rule_matrix(r), g) == step_uniform(g, r)`
//! for every grid — and two independent constructions are provided:
//!
//! * [`basic_matrix`] / [`rule_matrix`] place a 1 per cell and in-range
//!   neighbor straight from the offset table;
//! * [`block_rule_matrix`] assembles the matrix as an `m x m` block
//!   tri-diagonal of `n x n` blocks built from `I`, the superdiagonal
//!   matrix `T1` and its transpose `T2`.
//!
//! The two must agree exactly; tests and the acceptance suite hold them to
//! that. Hybrid (per-cell) rules generalize to arbitrary dependency lists:
//! row `i` of the matrix holds ones at exactly the flat indices whose XOR
//! gives cell `i`'s next state.

use crate::bitmat::BitMatrix;
use crate::error::{Error, ParseError};
use crate::grid::Grid;
use crate::rule::Rule;
use crate::step::HybridSpec;

/// Which boundary-masking diagonal pattern a sequence follows.
///
/// For an `n`-column grid, `S1` is `(n-1)` ones then a zero, repeating and
/// ending with `(n-1)` ones; `S2` starts with a zero, then `(n-1)` ones and
/// a zero, repeating and ending with a zero. `S1` masks cells without a
/// right neighbor, `S2` cells without a left one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    S1,
    S2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundarySequence {
    pub kind: SequenceKind,
    pub n: usize,
}

impl BoundarySequence {
    pub fn new(kind: SequenceKind, n: usize) -> BoundarySequence {
        BoundarySequence { kind, n }
    }

    /// Value at position `k` (0-based).
    pub fn bit(&self, k: usize) -> bool {
        match self.kind {
            SequenceKind::S1 => k % self.n != self.n - 1,
            SequenceKind::S2 => !k.is_multiple_of(self.n),
        }
    }

    pub fn prefix(&self, len: usize) -> Vec<bool> {
        (0..len).map(|k| self.bit(k)).collect()
    }
}

/// Matrix of one fundamental rule: entry `(i, j)` is 1 exactly when cell
/// `j` is cell `i`'s (in-range) selected neighbor.
pub fn basic_matrix(fundamental: Rule, m: usize, n: usize) -> Result<BitMatrix, Error> {
    if !fundamental.is_fundamental() {
        return Err(Error::NotFundamental(fundamental.value()));
    }
    let offset = fundamental.offsets()[0];
    let mut mat = BitMatrix::new(m * n, m * n);
    for i in 0..m {
        for j in 0..n {
            let (si, sj) = (
                i as isize + offset.dr as isize,
                j as isize + offset.dc as isize,
            );
            if si >= 0 && sj >= 0 && (si as usize) < m && (sj as usize) < n {
                mat.set(i * n + j, si as usize * n + sj as usize, true);
            }
        }
    }
    Ok(mat)
}

/// Matrix of an arbitrary rule: entrywise XOR of the basic matrices of its
/// decomposition. Rule 0 gives the zero matrix.
pub fn rule_matrix(rule: Rule, m: usize, n: usize) -> BitMatrix {
    let mut mat = BitMatrix::new(m * n, m * n);
    for fundamental in rule.decompose() {
        let basic = basic_matrix(fundamental, m, n).expect("decompose yields fundamentals");
        mat = mat.add(&basic).expect("same dimensions");
    }
    mat
}

/// Block tri-diagonal construction of the same matrix.
///
/// The diagonal block `D` collects the in-row weights (1 -> I, 2 -> T1,
/// 32 -> T2), the superdiagonal block `U` the bottom-row weights (8 -> I,
/// 4 -> T1, 16 -> T2) and the subdiagonal block `L` the top-row weights
/// (128 -> I, 256 -> T1, 64 -> T2), where T1 is the `n x n` superdiagonal
/// matrix and T2 its transpose.
pub fn block_rule_matrix(rule: Rule, m: usize, n: usize) -> BitMatrix {
    let identity = BitMatrix::identity(n);
    let mut t1 = BitMatrix::new(n, n);
    for k in 0..n.saturating_sub(1) {
        t1.set(k, k + 1, true);
    }
    let t2 = t1.transpose();

    let combine = |weights: [u16; 3]| -> BitMatrix {
        // weights[0] -> I, weights[1] -> T1, weights[2] -> T2
        let mut block = BitMatrix::new(n, n);
        let value = rule.value();
        for (weight, part) in weights.into_iter().zip([&identity, &t1, &t2]) {
            if value & weight != 0 {
                block = block.add(part).expect("same dimensions");
            }
        }
        block
    };

    let d = combine([1, 2, 32]);
    let u = combine([8, 4, 16]);
    let l = combine([128, 256, 64]);

    let mut mat = BitMatrix::new(m * n, m * n);
    let mut place = |block_row: usize, block_col: usize, block: &BitMatrix| {
        for bi in 0..n {
            for bj in block.row_ones(bi).collect::<Vec<_>>() {
                mat.set(block_row * n + bi, block_col * n + bj, true);
            }
        }
    };
    for b in 0..m {
        place(b, b, &d);
        if b + 1 < m {
            place(b, b + 1, &u);
            place(b + 1, b, &l);
        }
    }
    mat
}

/// Per-cell dependency lists over flat row-major indices (0-based in
/// memory, 1-based in the text format). Cell `i`'s next state is the XOR
/// of the listed cells; out-of-grid neighbors are simply absent, which
/// encodes the null boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyMap {
    deps: Vec<Vec<usize>>,
}

impl DependencyMap {
    /// `deps[i]` lists the 0-based flat indices feeding cell `i`. Indices
    /// must be in range; duplicates are rejected rather than canceled so
    /// that input mistakes surface.
    pub fn new(deps: Vec<Vec<usize>>) -> Result<DependencyMap, Error> {
        let cells = deps.len();
        let mut canonical = Vec::with_capacity(cells);
        for (cell, list) in deps.into_iter().enumerate() {
            let mut sorted = list;
            sorted.sort_unstable();
            for pair in sorted.windows(2) {
                if pair[0] == pair[1] {
                    return Err(Error::DuplicateDependency {
                        cell: cell + 1,
                        index: pair[0] + 1,
                    });
                }
            }
            if let Some(&max) = sorted.last() {
                if max >= cells {
                    return Err(Error::DependencyOutOfRange {
                        index: max + 1,
                        cells,
                    });
                }
            }
            canonical.push(sorted);
        }
        Ok(DependencyMap { deps: canonical })
    }

    pub fn cells(&self) -> usize {
        self.deps.len()
    }

    pub fn deps(&self, cell: usize) -> &[usize] {
        &self.deps[cell]
    }

    /// Parse the text format: line `i` holds cell `i`'s 1-based indices
    /// separated by spaces, an empty line meaning no dependencies. Exactly
    /// `cells` lines are expected.
    pub fn parse(text: &str, cells: usize) -> Result<DependencyMap, ParseError> {
        let lines: Vec<&str> = text.lines().collect();
        if lines.len() != cells {
            return Err(ParseError::line(
                lines.len().max(1),
                format!("expected {cells} lines, got {}", lines.len()),
            ));
        }
        let mut deps = Vec::with_capacity(cells);
        for (idx, line) in lines.iter().enumerate() {
            let line_no = idx + 1;
            let mut list = Vec::new();
            for token in line.split_whitespace() {
                let one_based: usize = token
                    .parse()
                    .map_err(|_| ParseError::line(line_no, format!("malformed index {token:?}")))?;
                if one_based == 0 {
                    return Err(ParseError::line(
                        line_no,
                        "indices are 1-based; 0 is invalid",
                    ));
                }
                list.push(one_based - 1);
            }
            deps.push(list);
        }
        DependencyMap::new(deps).map_err(|e| ParseError::line(0, format!("{e}")))
    }

    pub fn to_text(&self) -> String {
        let mut text = String::new();
        for list in &self.deps {
            let line: Vec<String> = list.iter().map(|i| (i + 1).to_string()).collect();
            text.push_str(&line.join(" "));
            text.push('\n');
        }
        text
    }
}

/// Matrix of a generalized hybrid rule: row `i` holds ones at exactly the
/// columns listed for cell `i`.
pub fn hybrid_matrix(dep: &DependencyMap, m: usize, n: usize) -> Result<BitMatrix, Error> {
    if dep.cells() != m * n {
        return Err(Error::DimensionMismatch {
            context: "dependency map",
            expected: format!("{} cells", m * n),
            actual: format!("{} cells", dep.cells()),
        });
    }
    let mut mat = BitMatrix::new(m * n, m * n);
    for cell in 0..dep.cells() {
        for &src in dep.deps(cell) {
            mat.set(cell, src, true);
        }
    }
    Ok(mat)
}

/// Matrix of a per-cell rule assignment; applying it equals
/// [`crate::step::step_hybrid`].
pub fn hybrid_matrix_from_rules(spec: &HybridSpec) -> BitMatrix {
    let (m, n) = (spec.rows(), spec.cols());
    let mut mat = BitMatrix::new(m * n, m * n);
    for i in 0..m {
        for j in 0..n {
            for offset in spec.get(i, j).offsets() {
                let (si, sj) = (
                    i as isize + offset.dr as isize,
                    j as isize + offset.dc as isize,
                );
                if si >= 0 && sj >= 0 && (si as usize) < m && (sj as usize) < n {
                    mat.set(i * n + j, si as usize * n + sj as usize, true);
                }
            }
        }
    }
    mat
}

/// Read a matrix back as dependency lists: row `i`'s one-positions become
/// cell `i`'s dependencies. Exact inverse of [`hybrid_matrix`].
pub fn to_dependency_map(mat: &BitMatrix, m: usize, n: usize) -> Result<DependencyMap, Error> {
    if mat.rows() != m * n || mat.cols() != m * n {
        return Err(Error::DimensionMismatch {
            context: "dependency extraction",
            expected: format!("{0}x{0} matrix", m * n),
            actual: format!("{}x{} matrix", mat.rows(), mat.cols()),
        });
    }
    let deps = (0..mat.rows()).map(|i| mat.row_ones(i).collect()).collect();
    DependencyMap::new(deps)
}

/// Apply a rule matrix to a grid: flatten row-major, multiply over GF(2),
/// unflatten row-major.
pub fn apply(mat: &BitMatrix, grid: &Grid) -> Result<Grid, Error> {
    let cells = grid.rows() * grid.cols();
    if mat.rows() != cells || mat.cols() != cells {
        return Err(Error::DimensionMismatch {
            context: "matrix application",
            expected: format!("{0}x{0} matrix", cells),
            actual: format!("{}x{} matrix", mat.rows(), mat.cols()),
        });
    }
    let mut vector = vec![0u64; cells.div_ceil(64)];
    for (i, j) in grid.iter_ones() {
        let flat = i * grid.cols() + j;
        vector[flat / 64] |= 1 << (flat % 64);
    }
    let mut out = Grid::new(grid.rows(), grid.cols())?;
    for row in 0..cells {
        let acc = mat
            .row_words(row)
            .iter()
            .zip(&vector)
            .fold(0u64, |acc, (a, b)| acc ^ (a & b));
        if acc.count_ones() % 2 == 1 {
            out.set(row / grid.cols(), row % grid.cols(), true);
        }
    }
    Ok(out)
}
