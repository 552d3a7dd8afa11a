//! Orthonormal DCT-II and its inverse in one, two and three dimensions.
//!
//! The transform is computed axis by axis with a precomputed cosine table
//! (direct O(N^2) per line). The normalization is orthonormal:
//!
//! ```text
//! X[u] = a(u) * sum_m x[m] * cos(pi * (2m + 1) * u / (2N)),  a(0) = sqrt(1/N), a(u>0) = sqrt(2/N)
//! ```
//!
//! so energy is preserved and the DC coefficient of any grid equals
//! `sum / sqrt(len)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Real-valued 2D grid, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDimension(format!(
                "matrix extents must be positive, got {rows}x{cols}"
            )));
        }
        check_len(rows * cols, data.len(), || format!("{rows}x{cols}"))?;
        check_finite(&data)?;
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Matrix::new(rows, cols, vec![0.0; rows * cols])
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }
}

/// Real-valued 3D grid. Samples are stored band-major, then row-major:
/// `index = (band * rows + row) * cols + col`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cube {
    rows: usize,
    cols: usize,
    bands: usize,
    data: Vec<f64>,
}

impl Cube {
    pub fn new(rows: usize, cols: usize, bands: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || bands == 0 {
            return Err(Error::InvalidDimension(format!(
                "cube extents must be positive, got {rows}x{cols}x{bands}"
            )));
        }
        check_len(rows * cols * bands, data.len(), || {
            format!("{rows}x{cols}x{bands}")
        })?;
        check_finite(&data)?;
        Ok(Cube {
            rows,
            cols,
            bands,
            data,
        })
    }

    pub fn zeros(rows: usize, cols: usize, bands: usize) -> Result<Self> {
        Cube::new(rows, cols, bands, vec![0.0; rows * cols * bands])
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        bands: usize,
        mut f: impl FnMut(usize, usize, usize) -> f64,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols * bands);
        for b in 0..bands {
            for r in 0..rows {
                for c in 0..cols {
                    data.push(f(r, c, b));
                }
            }
        }
        Cube::new(rows, cols, bands, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn bands(&self) -> usize {
        self.bands
    }

    pub fn get(&self, row: usize, col: usize, band: usize) -> f64 {
        self.data[(band * self.rows + row) * self.cols + col]
    }

    /// Copy of one band as a matrix.
    pub fn band(&self, band: usize) -> Matrix {
        let plane = self.rows * self.cols;
        let data = self.data[band * plane..(band + 1) * plane].to_vec();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    /// Builds a cube without re-validating; callers guarantee the invariants.
    pub(crate) fn from_parts(rows: usize, cols: usize, bands: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols * bands);
        Cube {
            rows,
            cols,
            bands,
            data,
        }
    }
}

fn check_len(expected: usize, actual: usize, shape: impl Fn() -> String) -> Result<()> {
    if expected != actual {
        return Err(Error::Shape {
            expected: format!("{} values for {}", expected, shape()),
            actual: format!("{actual} values"),
        });
    }
    Ok(())
}

fn check_finite(data: &[f64]) -> Result<()> {
    match data.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::NonFinite(i)),
        None => Ok(()),
    }
}

/// Axis of a [`Cube`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Col,
    Band,
}

/// Cosine table for a length-`n` orthonormal DCT-II.
///
/// `basis[u * n + m] = a(u) * cos(pi * (2m + 1) * u / (2n))`. Rows of the
/// table are orthonormal, so the inverse is the transpose.
#[derive(Debug, Clone)]
pub struct DctPlan {
    n: usize,
    basis: Vec<f64>,
}

impl DctPlan {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension(
                "DCT length must be positive".into(),
            ));
        }
        let nf = n as f64;
        let mut basis = Vec::with_capacity(n * n);
        for u in 0..n {
            let scale = if u == 0 {
                (1.0 / nf).sqrt()
            } else {
                (2.0 / nf).sqrt()
            };
            for m in 0..n {
                let angle = PI * ((2 * m + 1) * u) as f64 / (2.0 * nf);
                basis.push(scale * angle.cos());
            }
        }
        Ok(DctPlan { n, basis })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Forward transform of `input` into `output`; both must have length `n`.
    pub fn forward_into(&self, input: &[f64], output: &mut [f64]) {
        let n = self.n;
        debug_assert!(input.len() == n && output.len() == n);
        for (u, out) in output.iter_mut().enumerate() {
            let row = &self.basis[u * n..(u + 1) * n];
            *out = row.iter().zip(input).map(|(b, x)| b * x).sum();
        }
    }

    /// Inverse transform of `input` into `output`; both must have length `n`.
    pub fn inverse_into(&self, input: &[f64], output: &mut [f64]) {
        let n = self.n;
        debug_assert!(input.len() == n && output.len() == n);
        output.iter_mut().for_each(|v| *v = 0.0);
        for (u, &coeff) in input.iter().enumerate() {
            let row = &self.basis[u * n..(u + 1) * n];
            for (out, b) in output.iter_mut().zip(row) {
                *out += coeff * b;
            }
        }
    }

    /// Applies the transform along every line of `data` selected by `stride`.
    ///
    /// `data` is viewed as `outer` groups of `n * stride` values; each group
    /// holds `stride` interleaved lines of length `n`.
    fn apply_strided(&self, data: &mut [f64], stride: usize, inverse: bool) {
        let n = self.n;
        if n == 1 {
            // a(0) = 1 for a single sample: identity.
            return;
        }
        let mut line = vec![0.0; n];
        let mut out = vec![0.0; n];
        for group in data.chunks_exact_mut(n * stride) {
            for offset in 0..stride {
                for (k, v) in line.iter_mut().enumerate() {
                    *v = group[k * stride + offset];
                }
                if inverse {
                    self.inverse_into(&line, &mut out);
                } else {
                    self.forward_into(&line, &mut out);
                }
                for (k, v) in out.iter().enumerate() {
                    group[k * stride + offset] = *v;
                }
            }
        }
    }
}

/// Reusable plans for transforming cubes of one fixed shape.
#[derive(Debug, Clone)]
pub struct Dct3Plan {
    rows: DctPlan,
    cols: DctPlan,
    bands: DctPlan,
}

impl Dct3Plan {
    pub fn new(rows: usize, cols: usize, bands: usize) -> Result<Self> {
        Ok(Dct3Plan {
            rows: DctPlan::new(rows)?,
            cols: DctPlan::new(cols)?,
            bands: DctPlan::new(bands)?,
        })
    }

    pub fn forward(&self, cube: &Cube) -> Result<Cube> {
        self.run(cube, false)
    }

    pub fn inverse(&self, cube: &Cube) -> Result<Cube> {
        self.run(cube, true)
    }

    fn run(&self, cube: &Cube, inverse: bool) -> Result<Cube> {
        let expected = (self.rows.len(), self.cols.len(), self.bands.len());
        if (cube.rows, cube.cols, cube.bands) != expected {
            return Err(Error::Shape {
                expected: format!("{}x{}x{}", expected.0, expected.1, expected.2),
                actual: format!("{}x{}x{}", cube.rows, cube.cols, cube.bands),
            });
        }
        let mut data = cube.data.clone();
        self.cols.apply_strided(&mut data, 1, inverse);
        self.rows.apply_strided(&mut data, cube.cols, inverse);
        self.bands
            .apply_strided(&mut data, cube.rows * cube.cols, inverse);
        Ok(Cube::from_parts(cube.rows, cube.cols, cube.bands, data))
    }
}

fn vector_transform(signal: &[f64], inverse: bool) -> Result<Vec<f64>> {
    check_finite(signal)?;
    let plan = DctPlan::new(signal.len())?;
    let mut out = vec![0.0; signal.len()];
    if inverse {
        plan.inverse_into(signal, &mut out);
    } else {
        plan.forward_into(signal, &mut out);
    }
    Ok(out)
}

/// Orthonormal 1D DCT-II.
pub fn dct1(signal: &[f64]) -> Result<Vec<f64>> {
    vector_transform(signal, false)
}

/// Inverse of [`dct1`] (orthonormal DCT-III).
pub fn idct1(coeffs: &[f64]) -> Result<Vec<f64>> {
    vector_transform(coeffs, true)
}

fn matrix_transform(m: &Matrix, inverse: bool) -> Result<Matrix> {
    let mut data = m.data.clone();
    DctPlan::new(m.cols)?.apply_strided(&mut data, 1, inverse);
    DctPlan::new(m.rows)?.apply_strided(&mut data, m.cols, inverse);
    Ok(Matrix {
        rows: m.rows,
        cols: m.cols,
        data,
    })
}

/// Separable orthonormal 2D DCT-II.
pub fn dct2d(m: &Matrix) -> Result<Matrix> {
    matrix_transform(m, false)
}

pub fn idct2d(m: &Matrix) -> Result<Matrix> {
    matrix_transform(m, true)
}

/// Separable orthonormal 3D DCT-II.
///
/// Equivalent to a 2D transform of every band followed by a 1D transform
/// along the band axis of every (row, col) position.
pub fn dct3d(c: &Cube) -> Result<Cube> {
    Dct3Plan::new(c.rows, c.cols, c.bands)?.forward(c)
}

pub fn idct3d(c: &Cube) -> Result<Cube> {
    Dct3Plan::new(c.rows, c.cols, c.bands)?.inverse(c)
}

/// 1D DCT-II (or inverse) along a single axis of a cube.
pub fn dct_axis(c: &Cube, axis: Axis, inverse: bool) -> Result<Cube> {
    let (n, stride) = match axis {
        Axis::Col => (c.cols, 1),
        Axis::Row => (c.rows, c.cols),
        Axis::Band => (c.bands, c.rows * c.cols),
    };
    let mut data = c.data.clone();
    DctPlan::new(n)?.apply_strided(&mut data, stride, inverse);
    Ok(Cube::from_parts(c.rows, c.cols, c.bands, data))
}

pub mod oracle {
    //! Brute-force DCT-II by direct multi-index summation, for verification.

    use std::f64::consts::PI;

    use crate::error::{Error, Result};

    /// Largest grid the oracle accepts; cost is quadratic in the size.
    pub const MAX_ORACLE_SIZE: usize = 4096;

    /// Orthonormal DCT-II of a grid stored row-major over `extents`
    /// (first extent slowest). Works for any number of axes.
    pub fn naive_dct_oracle(values: &[f64], extents: &[usize]) -> Result<Vec<f64>> {
        if extents.is_empty() || extents.contains(&0) {
            return Err(Error::InvalidDimension(format!(
                "oracle extents must be non-empty and positive, got {extents:?}"
            )));
        }
        let size: usize = extents.iter().product();
        if size > MAX_ORACLE_SIZE {
            return Err(Error::OracleTooLarge {
                size,
                limit: MAX_ORACLE_SIZE,
            });
        }
        if values.len() != size {
            return Err(Error::Shape {
                expected: format!("{size} values for extents {extents:?}"),
                actual: format!("{} values", values.len()),
            });
        }

        let unravel = |mut flat: usize| -> Vec<usize> {
            let mut idx = vec![0; extents.len()];
            for (axis, &n) in extents.iter().enumerate().rev() {
                idx[axis] = flat % n;
                flat /= n;
            }
            idx
        };

        let mut out = vec![0.0; size];
        for (k_flat, out_v) in out.iter_mut().enumerate() {
            let k = unravel(k_flat);
            let mut acc = 0.0;
            for (m_flat, &x) in values.iter().enumerate() {
                let m = unravel(m_flat);
                let mut weight = 1.0;
                for axis in 0..extents.len() {
                    let n = extents[axis] as f64;
                    let alpha = if k[axis] == 0 {
                        (1.0 / n).sqrt()
                    } else {
                        (2.0 / n).sqrt()
                    };
                    let angle = PI * (2.0 * m[axis] as f64 + 1.0) * k[axis] as f64 / (2.0 * n);
                    weight *= alpha * angle.cos();
                }
                acc += weight * x;
            }
            *out_v = acc;
        }
        Ok(out)
    }
}
