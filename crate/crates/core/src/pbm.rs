//! Portable-bitmap reading and writing, plain (P1) and binary (P4).
//!
//! A set cell is written as 1 and drawn black. Both encodings round-trip
//! bit-exactly. Parsing is strict: the declared dimensions must match the
//! raster exactly, and anything after it is an error; `#` comments are
//! allowed anywhere whitespace is. P1 digits may appear packed or
//! whitespace-separated. P4 rows are padded to byte boundaries with the
//! leftmost pixel in the most significant bit.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::ParseError;
use crate::grid::Grid;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    /// ASCII `P1`.
    Plain,
    /// Binary `P4`.
    Binary,
}

impl std::str::FromStr for ImageFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<ImageFormat, String> {
        match s.to_ascii_lowercase().as_str() {
            "p1" | "plain" | "ascii" => Ok(ImageFormat::Plain),
            "p4" | "binary" => Ok(ImageFormat::Binary),
            other => Err(format!("unknown image format {other:?}, expected p1 or p4")),
        }
    }
}

/// Encode a grid in the chosen format.
pub fn encode(grid: &Grid, format: ImageFormat) -> Vec<u8> {
    let mut out = Vec::new();
    match format {
        ImageFormat::Plain => {
            out.extend_from_slice(format!("P1\n{} {}\n", grid.cols(), grid.rows()).as_bytes());
            for i in 0..grid.rows() {
                let mut line = String::with_capacity(grid.cols() * 2);
                for j in 0..grid.cols() {
                    if j > 0 {
                        line.push(' ');
                    }
                    line.push(if grid.get(i as isize, j as isize) {
                        '1'
                    } else {
                        '0'
                    });
                }
                line.push('\n');
                out.extend_from_slice(line.as_bytes());
            }
        }
        ImageFormat::Binary => {
            out.extend_from_slice(format!("P4\n{} {}\n", grid.cols(), grid.rows()).as_bytes());
            let row_bytes = grid.cols().div_ceil(8);
            for i in 0..grid.rows() {
                let mut row = vec![0u8; row_bytes];
                for j in 0..grid.cols() {
                    if grid.get(i as isize, j as isize) {
                        row[j / 8] |= 0x80 >> (j % 8);
                    }
                }
                out.extend_from_slice(&row);
            }
        }
    }
    out
}

/// Decode either format, dispatching on the magic number.
pub fn decode(data: &[u8]) -> Result<Grid, ParseError> {
    let mut cursor = Cursor { data, pos: 0 };
    let magic = cursor.take_magic()?;
    cursor.skip_space_and_comments();
    let width = cursor.take_number("width")?;
    cursor.skip_space_and_comments();
    let height = cursor.take_number("height")?;
    if width == 0
        || height == 0
        || width
            .checked_mul(height)
            .is_none_or(|c| c > u32::MAX as u64)
    {
        return Err(ParseError::DimensionOverflow { width, height });
    }
    let (rows, cols) = (height as usize, width as usize);
    match magic {
        ImageFormat::Plain => {
            cursor.skip_space_and_comments();
            let mut grid = Grid::new(rows, cols).expect("dimensions checked above");
            for cell in 0..rows * cols {
                match cursor.take_bit() {
                    Some(true) => grid.set(cell / cols, cell % cols, true),
                    Some(false) => {}
                    None => {
                        return Err(ParseError::Truncated {
                            offset: cursor.pos,
                            got: cell,
                            need: rows * cols,
                            unit: "bits",
                        })
                    }
                }
                cursor.skip_space_and_comments();
            }
            if cursor.pos < cursor.data.len() {
                return Err(ParseError::TrailingData { offset: cursor.pos });
            }
            Ok(grid)
        }
        ImageFormat::Binary => {
            // Exactly one whitespace byte separates the header from the raster.
            match cursor.peek() {
                Some(b) if b.is_ascii_whitespace() => cursor.pos += 1,
                _ => {
                    return Err(ParseError::BadHeader {
                        offset: cursor.pos,
                        what: "raster separator",
                    })
                }
            }
            let row_bytes = cols.div_ceil(8);
            let need = rows * row_bytes;
            let raster = &cursor.data[cursor.pos.min(cursor.data.len())..];
            if raster.len() < need {
                return Err(ParseError::Truncated {
                    offset: cursor.data.len(),
                    got: raster.len(),
                    need,
                    unit: "bytes",
                });
            }
            if raster.len() > need {
                return Err(ParseError::TrailingData {
                    offset: cursor.pos + need,
                });
            }
            let mut grid = Grid::new(rows, cols).expect("dimensions checked above");
            for i in 0..rows {
                for j in 0..cols {
                    if raster[i * row_bytes + j / 8] & (0x80 >> (j % 8)) != 0 {
                        grid.set(i, j, true);
                    }
                }
            }
            Ok(grid)
        }
    }
}

pub fn write_image(
    grid: &Grid,
    path: impl AsRef<Path>,
    format: ImageFormat,
) -> std::io::Result<()> {
    let mut file = fs::File::create(path)?;
    file.write_all(&encode(grid, format))?;
    file.flush()
}

pub fn read_image(path: impl AsRef<Path>) -> Result<Grid, std::io::Error> {
    let data = fs::read(&path)?;
    decode(&data).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e.to_string()))
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.data.get(self.pos).copied()
    }

    fn take_magic(&mut self) -> Result<ImageFormat, ParseError> {
        let magic = self.data.get(self.pos..self.pos + 2);
        let format = match magic {
            Some(b"P1") => ImageFormat::Plain,
            Some(b"P4") => ImageFormat::Binary,
            _ => return Err(ParseError::BadMagic { offset: self.pos }),
        };
        self.pos += 2;
        Ok(format)
    }

    fn skip_space_and_comments(&mut self) {
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_whitespace() => self.pos += 1,
                Some(b'#') => {
                    while let Some(b) = self.peek() {
                        self.pos += 1;
                        if b == b'\n' {
                            break;
                        }
                    }
                }
                _ => return,
            }
        }
    }

    fn take_number(&mut self, what: &'static str) -> Result<u64, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start || self.pos - start > 10 {
            return Err(ParseError::BadHeader {
                offset: start,
                what,
            });
        }
        let text = std::str::from_utf8(&self.data[start..self.pos]).expect("digits are ASCII");
        text.parse().map_err(|_| ParseError::BadHeader {
            offset: start,
            what,
        })
    }

    /// Next raster bit of a plain file, or None at end of input.
    fn take_bit(&mut self) -> Option<bool> {
        match self.peek() {
            Some(b'0') => {
                self.pos += 1;
                Some(false)
            }
            Some(b'1') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }
}
