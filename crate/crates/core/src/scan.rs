//! Zigzag scan orders as explicit permutations of grid positions.
//!
//! All coordinates are 0-based. Four generators are provided:
//!
//! * [`square_zigzag_order`]: anti-diagonals `row + col = d`, row ascending on
//!   even `d` and descending on odd `d`. The first step goes *down* to
//!   `(1, 0)`, so this table is the transpose of the ISO JPEG zigzag.
//! * [`rect_zigzag_order`]: the same walk on an `R x C` grid. When `R > C`
//!   the direction parity is swapped.
//! * [`cubic_zigzag_order`]: planes `row + col + band = s` of an `n^3` cube.
//!   Even planes run row descending, col descending (band ascending); odd
//!   planes run row ascending, col ascending (band descending).
//! * [`raster_order_3d`]: lexicographic `(band, row, col)`, the baseline.
//!
//! A [`ScanOrder`] stores both directions of the permutation as offsets into
//! the grid's storage layout (row-major for 2D, band-major then row-major for
//! 3D), so lookups are O(1).

use crate::error::{Error, Result};
use crate::transform::{Cube, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coord2 {
    pub row: usize,
    pub col: usize,
}

impl Coord2 {
    pub const fn new(row: usize, col: usize) -> Self {
        Coord2 { row, col }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coord3 {
    pub row: usize,
    pub col: usize,
    pub band: usize,
}

impl Coord3 {
    pub const fn new(row: usize, col: usize, band: usize) -> Self {
        Coord3 { row, col, band }
    }
}

/// One anti-diagonal (2D) or diagonal plane (3D) of a scan, with the range of
/// rows it covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanDiag {
    pub index: usize,
    pub lo: usize,
    pub hi: usize,
}

impl ScanDiag {
    /// Anti-diagonal `row + col = index` of a `rows x cols` grid.
    pub fn grid(index: usize, rows: usize, cols: usize) -> Option<Self> {
        if rows == 0 || cols == 0 || index > rows + cols - 2 {
            return None;
        }
        Some(ScanDiag {
            index,
            lo: (index + 1).saturating_sub(cols),
            hi: index.min(rows - 1),
        })
    }

    /// Plane `row + col + band = index` of an `n^3` cube.
    pub fn cube(index: usize, n: usize) -> Option<Self> {
        if n == 0 || index > 3 * (n - 1) {
            return None;
        }
        Some(ScanDiag {
            index,
            lo: index.saturating_sub(2 * (n - 1)),
            hi: index.min(n - 1),
        })
    }

    pub fn rows(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

/// Extents of the grid a scan order applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Grid2 {
        rows: usize,
        cols: usize,
    },
    Grid3 {
        rows: usize,
        cols: usize,
        bands: usize,
    },
}

impl Shape {
    pub fn len(&self) -> usize {
        match *self {
            Shape::Grid2 { rows, cols } => rows * cols,
            Shape::Grid3 { rows, cols, bands } => rows * cols * bands,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ndim(&self) -> usize {
        match self {
            Shape::Grid2 { .. } => 2,
            Shape::Grid3 { .. } => 3,
        }
    }
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Shape::Grid2 { rows, cols } => write!(f, "{rows}x{cols}"),
            Shape::Grid3 { rows, cols, bands } => write!(f, "{rows}x{cols}x{bands}"),
        }
    }
}

/// An immutable bijection between scan positions and grid cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOrder {
    shape: Shape,
    /// position -> storage offset
    forward: Vec<usize>,
    /// storage offset -> position
    inverse: Vec<usize>,
}

impl ScanOrder {
    /// Builds an order from storage offsets listed in scan order. Fails unless
    /// `offsets` is a permutation of `0..shape.len()`.
    pub fn from_offsets(shape: Shape, offsets: Vec<usize>) -> Result<Self> {
        let len = shape.len();
        if len == 0 {
            return Err(Error::InvalidDimension(format!("empty grid {shape}")));
        }
        if offsets.len() != len {
            return Err(Error::Shape {
                expected: format!("{len} positions for {shape}"),
                actual: format!("{} positions", offsets.len()),
            });
        }
        let mut inverse = vec![usize::MAX; len];
        for (pos, &off) in offsets.iter().enumerate() {
            if off >= len || inverse[off] != usize::MAX {
                return Err(Error::InvalidDimension(format!(
                    "offset {off} at position {pos} is out of range or repeated"
                )));
            }
            inverse[off] = pos;
        }
        Ok(ScanOrder {
            shape,
            forward: offsets,
            inverse,
        })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// Storage offsets in scan order.
    pub fn offsets(&self) -> &[usize] {
        &self.forward
    }

    /// Storage offset of scan position `pos`.
    pub fn offset(&self, pos: usize) -> usize {
        self.forward[pos]
    }

    /// Scan position of the cell at storage offset `offset`.
    pub fn position(&self, offset: usize) -> usize {
        self.inverse[offset]
    }

    pub fn coord2(&self, pos: usize) -> Option<Coord2> {
        match self.shape {
            Shape::Grid2 { cols, .. } => {
                let off = *self.forward.get(pos)?;
                Some(Coord2::new(off / cols, off % cols))
            }
            Shape::Grid3 { .. } => None,
        }
    }

    pub fn coord3(&self, pos: usize) -> Option<Coord3> {
        match self.shape {
            Shape::Grid3 { rows, cols, .. } => {
                let off = *self.forward.get(pos)?;
                let plane = rows * cols;
                Some(Coord3::new((off % plane) / cols, off % cols, off / plane))
            }
            Shape::Grid2 { .. } => None,
        }
    }

    pub fn position_of2(&self, c: Coord2) -> Option<usize> {
        match self.shape {
            Shape::Grid2 { rows, cols } if c.row < rows && c.col < cols => {
                Some(self.inverse[c.row * cols + c.col])
            }
            _ => None,
        }
    }

    pub fn position_of3(&self, c: Coord3) -> Option<usize> {
        match self.shape {
            Shape::Grid3 { rows, cols, bands }
                if c.row < rows && c.col < cols && c.band < bands =>
            {
                Some(self.inverse[(c.band * rows + c.row) * cols + c.col])
            }
            _ => None,
        }
    }

    /// All 2D coordinates in scan order (empty for a 3D order).
    pub fn coords2(&self) -> Vec<Coord2> {
        (0..self.len()).filter_map(|p| self.coord2(p)).collect()
    }

    /// All 3D coordinates in scan order (empty for a 2D order).
    pub fn coords3(&self) -> Vec<Coord3> {
        (0..self.len()).filter_map(|p| self.coord3(p)).collect()
    }

    /// Reads `values` (in storage layout) in scan order.
    pub fn gather<T: Copy>(&self, values: &[T]) -> Result<Vec<T>> {
        self.check_len(values.len())?;
        Ok(self.forward.iter().map(|&off| values[off]).collect())
    }

    /// Places a scan-ordered sequence back into storage layout.
    pub fn scatter<T: Copy + Default>(&self, scanned: &[T]) -> Result<Vec<T>> {
        self.check_len(scanned.len())?;
        let mut out = vec![T::default(); scanned.len()];
        for (&off, &v) in self.forward.iter().zip(scanned) {
            out[off] = v;
        }
        Ok(out)
    }

    fn check_len(&self, actual: usize) -> Result<()> {
        if actual != self.len() {
            return Err(Error::Shape {
                expected: format!("{} values for {}", self.len(), self.shape),
                actual: format!("{actual} values"),
            });
        }
        Ok(())
    }
}

fn check_extent(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidDimension(format!(
            "{name} must be at least 1"
        )));
    }
    Ok(())
}

/// Anti-diagonal walk of a `rows x cols` grid. On diagonals whose parity
/// matches `ascending_parity` rows are visited in increasing order.
fn diagonal_walk(rows: usize, cols: usize, ascending_parity: usize) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(rows * cols);
    for d in 0..=rows + cols - 2 {
        let diag = ScanDiag::grid(d, rows, cols).expect("diagonal in range");
        let mut push = |row: usize| offsets.push(row * cols + (d - row));
        if d % 2 == ascending_parity {
            diag.rows().for_each(&mut push);
        } else {
            diag.rows().rev().for_each(&mut push);
        }
    }
    offsets
}

/// Zigzag order of an `n x n` grid.
pub fn square_zigzag_order(n: usize) -> Result<ScanOrder> {
    check_extent("n", n)?;
    ScanOrder::from_offsets(Shape::Grid2 { rows: n, cols: n }, diagonal_walk(n, n, 0))
}

/// Zigzag order of a `rows x cols` grid. Equal to [`square_zigzag_order`]
/// when the grid is square.
pub fn rect_zigzag_order(rows: usize, cols: usize) -> Result<ScanOrder> {
    check_extent("rows", rows)?;
    check_extent("cols", cols)?;
    let ascending_parity = if cols >= rows { 0 } else { 1 };
    ScanOrder::from_offsets(
        Shape::Grid2 { rows, cols },
        diagonal_walk(rows, cols, ascending_parity),
    )
}

/// 3D zigzag order of an `n x n x n` cube, walking the planes perpendicular
/// to the main diagonal with one direction per plane, alternating.
pub fn cubic_zigzag_order(n: usize) -> Result<ScanOrder> {
    check_extent("n", n)?;
    let max = n - 1;
    let mut offsets = Vec::with_capacity(n * n * n);
    let mut push = |row: usize, col: usize, band: usize| {
        offsets.push((band * n + row) * n + col);
    };
    for s in 0..=3 * max {
        let plane = ScanDiag::cube(s, n).expect("plane in range");
        if s % 2 == 0 {
            for row in plane.rows().rev() {
                let rest = s - row;
                for col in (rest.saturating_sub(max)..=rest.min(max)).rev() {
                    push(row, col, rest - col);
                }
            }
        } else {
            for row in plane.rows() {
                let rest = s - row;
                for col in rest.saturating_sub(max)..=rest.min(max) {
                    push(row, col, rest - col);
                }
            }
        }
    }
    ScanOrder::from_offsets(
        Shape::Grid3 {
            rows: n,
            cols: n,
            bands: n,
        },
        offsets,
    )
}

/// Lexicographic `(band, row, col)` order of an `n^3` cube.
pub fn raster_order_3d(n: usize) -> Result<ScanOrder> {
    check_extent("n", n)?;
    ScanOrder::from_offsets(
        Shape::Grid3 {
            rows: n,
            cols: n,
            bands: n,
        },
        (0..n * n * n).collect(),
    )
}

/// Square zigzag applied to each band of an `n^3` cube in turn, bands
/// ascending.
pub fn per_band_zigzag_order(n: usize) -> Result<ScanOrder> {
    let plane = square_zigzag_order(n)?;
    let area = n * n;
    let offsets = (0..n)
        .flat_map(|band| plane.offsets().iter().map(move |&off| band * area + off))
        .collect();
    ScanOrder::from_offsets(
        Shape::Grid3 {
            rows: n,
            cols: n,
            bands: n,
        },
        offsets,
    )
}

/// A real-valued grid, as produced by [`invert_scan`].
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    Matrix(Matrix),
    Cube(Cube),
}

/// Grids that a scan order can be applied to.
pub trait ScanSource {
    fn shape(&self) -> Shape;
    fn values(&self) -> &[f64];
}

impl ScanSource for Matrix {
    fn shape(&self) -> Shape {
        Shape::Grid2 {
            rows: self.rows(),
            cols: self.cols(),
        }
    }

    fn values(&self) -> &[f64] {
        self.as_slice()
    }
}

impl ScanSource for Cube {
    fn shape(&self) -> Shape {
        Shape::Grid3 {
            rows: self.rows(),
            cols: self.cols(),
            bands: self.bands(),
        }
    }

    fn values(&self) -> &[f64] {
        self.as_slice()
    }
}

impl ScanSource for Grid {
    fn shape(&self) -> Shape {
        match self {
            Grid::Matrix(m) => m.shape(),
            Grid::Cube(c) => c.shape(),
        }
    }

    fn values(&self) -> &[f64] {
        match self {
            Grid::Matrix(m) => m.as_slice(),
            Grid::Cube(c) => c.as_slice(),
        }
    }
}

/// Flattens `grid` into a sequence: `out[p] = grid[order.forward(p)]`.
pub fn apply_scan<G: ScanSource + ?Sized>(grid: &G, order: &ScanOrder) -> Result<Vec<f64>> {
    if grid.shape() != order.shape() {
        return Err(Error::Shape {
            expected: order.shape().to_string(),
            actual: grid.shape().to_string(),
        });
    }
    order.gather(grid.values())
}

/// Rebuilds the grid from a scan-ordered sequence.
pub fn invert_scan(values: &[f64], order: &ScanOrder) -> Result<Grid> {
    let data = order.scatter(values)?;
    Ok(match order.shape() {
        Shape::Grid2 { rows, cols } => Grid::Matrix(Matrix::new(rows, cols, data)?),
        Shape::Grid3 { rows, cols, bands } => Grid::Cube(Cube::new(rows, cols, bands, data)?),
    })
}
