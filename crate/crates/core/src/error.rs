use thiserror::Error;

/// Errors produced by grid, rule and matrix operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rule number {0} out of range 0..=511")]
    RuleOutOfRange(u32),
    #[error("rule {0} is not one of the nine fundamental rules")]
    NotFundamental(u16),
    #[error("grid must have at least one row and one column")]
    EmptyGrid,
    #[error("cell value must be 0 or 1, got {0}")]
    NotABit(u8),
    #[error("{context}: expected {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: String,
        actual: String,
    },
    #[error("dependency index {index} out of range 1..={cells} (1-based)")]
    DependencyOutOfRange { index: usize, cells: usize },
    #[error("duplicate dependency index {index} for cell {cell} (1-based)")]
    DuplicateDependency { cell: usize, index: usize },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("state graph enumeration is limited to 16 cells, grid has {0}")]
    StateSpaceTooLarge(usize),
    #[error("shape does not fit in a {rows}x{cols} grid")]
    ShapeTooLarge { rows: usize, cols: usize },
    #[error("density must lie in [0, 1], got {0}")]
    BadDensity(f64),
    #[error("destination ({row}, {col}) lies outside the {rows}x{cols} grid")]
    DestinationOutsideGrid {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("unsupported sweep angle {0}°, only 45° is implemented")]
    UnsupportedAngle(u32),
}

/// Errors produced while parsing the textual and binary file formats.
///
/// Byte-oriented formats report the offending byte offset; line-oriented
/// formats report the 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("byte {offset}: expected magic \"P1\" or \"P4\"")]
    BadMagic { offset: usize },
    #[error("byte {offset}: malformed {what} in header")]
    BadHeader { offset: usize, what: &'static str },
    #[error("image dimensions {width}x{height} overflow the addressable size")]
    DimensionOverflow { width: u64, height: u64 },
    #[error("byte {offset}: raster truncated, got {got} of {need} {unit}")]
    Truncated {
        offset: usize,
        got: usize,
        need: usize,
        unit: &'static str,
    },
    #[error("byte {offset}: trailing data after raster")]
    TrailingData { offset: usize },
    #[error("byte {offset}: invalid raster character {found:?}")]
    BadRasterChar { offset: usize, found: char },
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
}

impl ParseError {
    pub(crate) fn line(line: usize, msg: impl Into<String>) -> Self {
        ParseError::Line {
            line,
            msg: msg.into(),
        }
    }
}
