//! Block partitioning, level shift and uniform quantization.

use crate::error::{Error, Result};
use crate::transform::Cube;
use crate::volume_io::Volume;

/// How a volume is tiled into cubes of side `block_size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockGeometry {
    pub rows: usize,
    pub cols: usize,
    pub bands: usize,
    pub block_size: usize,
}

impl BlockGeometry {
    pub fn new(rows: usize, cols: usize, bands: usize, block_size: usize) -> Result<Self> {
        if rows == 0 || cols == 0 || bands == 0 || block_size == 0 {
            return Err(Error::InvalidDimension(format!(
                "geometry {rows}x{cols}x{bands} with block {block_size}"
            )));
        }
        Ok(BlockGeometry {
            rows,
            cols,
            bands,
            block_size,
        })
    }

    /// Blocks along (rows, cols, bands).
    pub fn grid(&self) -> (usize, usize, usize) {
        let b = self.block_size;
        (
            self.rows.div_ceil(b),
            self.cols.div_ceil(b),
            self.bands.div_ceil(b),
        )
    }

    pub fn block_count(&self) -> usize {
        let (r, c, b) = self.grid();
        r * c * b
    }

    pub fn block_volume(&self) -> usize {
        self.block_size.pow(3)
    }

    /// Origin (row, col, band) of block `index` in block raster order,
    /// band blocks slowest.
    pub fn block_origin(&self, index: usize) -> (usize, usize, usize) {
        let (gr, gc, _) = self.grid();
        let b = self.block_size;
        let per_band_layer = gr * gc;
        let bb = index / per_band_layer;
        let rb = (index % per_band_layer) / gc;
        let cb = index % gc;
        (rb * b, cb * b, bb * b)
    }
}

/// Splits `v` into cubes, padding the far edges by replicating the last
/// row, column and band.
pub fn partition_blocks(v: &Volume, block_size: usize) -> Result<(Vec<Cube>, BlockGeometry)> {
    let geom = BlockGeometry::new(v.rows(), v.cols(), v.bands(), block_size)?;
    let n = block_size;
    let blocks = (0..geom.block_count())
        .map(|i| {
            let (r0, c0, b0) = geom.block_origin(i);
            let mut data = Vec::with_capacity(n * n * n);
            for b in 0..n {
                let band = (b0 + b).min(v.bands() - 1);
                for r in 0..n {
                    let row = (r0 + r).min(v.rows() - 1);
                    for c in 0..n {
                        let col = (c0 + c).min(v.cols() - 1);
                        data.push(v.get(row, col, band) as f64);
                    }
                }
            }
            Cube::from_parts(n, n, n, data)
        })
        .collect();
    Ok((blocks, geom))
}

/// Writes reconstructed blocks back into a volume, cropping the padding.
pub fn assemble_blocks(blocks: &[Vec<u8>], geom: &BlockGeometry) -> Result<Volume> {
    if blocks.len() != geom.block_count() {
        return Err(Error::Shape {
            expected: format!("{} blocks", geom.block_count()),
            actual: format!("{} blocks", blocks.len()),
        });
    }
    let n = geom.block_size;
    let (rows, cols, bands) = (geom.rows, geom.cols, geom.bands);
    let mut samples = vec![0u8; rows * cols * bands];
    for (i, block) in blocks.iter().enumerate() {
        let (r0, c0, b0) = geom.block_origin(i);
        for b in 0..n.min(bands - b0) {
            for r in 0..n.min(rows - r0) {
                let src = (b * n + r) * n;
                let dst = ((b0 + b) * rows + r0 + r) * cols + c0;
                let width = n.min(cols - c0);
                samples[dst..dst + width].copy_from_slice(&block[src..src + width]);
            }
        }
    }
    Volume::new(rows, cols, bands, samples)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftDirection {
    /// Subtract 128.
    Forward,
    /// Add 128, round half away from zero, clamp to `[0, 255]`.
    Inverse,
}

pub fn level_shift(block: &Cube, direction: ShiftDirection) -> Cube {
    let data = block
        .as_slice()
        .iter()
        .map(|&v| match direction {
            ShiftDirection::Forward => v - 128.0,
            ShiftDirection::Inverse => (v + 128.0).round().clamp(0.0, 255.0),
        })
        .collect();
    Cube::from_parts(block.rows(), block.cols(), block.bands(), data)
}

/// Inverse level shift straight to 8-bit samples.
pub fn to_samples(block: &Cube) -> Vec<u8> {
    level_shift(block, ShiftDirection::Inverse)
        .as_slice()
        .iter()
        .map(|&v| v as u8)
        .collect()
}

/// `round_half_away_from_zero(coeff / step)` for every coefficient, in
/// storage order.
pub fn quantize(c: &Cube, quant_step: u16) -> Vec<i32> {
    let step = quant_step.max(1) as f64;
    c.as_slice()
        .iter()
        .map(|&v| (v / step).round() as i32)
        .collect()
}

pub fn dequantize(q: &[i32], n: usize, quant_step: u16) -> Result<Cube> {
    let step = quant_step.max(1) as f64;
    Cube::new(n, n, n, q.iter().map(|&v| v as f64 * step).collect())
}
