//! Demonstration volumetric block codec.
//!
//! Pipeline per block: level shift, 3D DCT, uniform quantization, scan,
//! run-length symbols, Exp-Golomb bits. Decoding inverts every stage except
//! quantization. Blocks are independent, so the per-block stages run in
//! parallel; the payload is always concatenated in block raster order.

pub mod bits;
mod block;
mod format;
mod rle;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

pub use bits::{BitReader, BitWriter};
pub use block::{
    assemble_blocks, dequantize, level_shift, partition_blocks, quantize, to_samples,
    BlockGeometry, ShiftDirection,
};
pub use format::{StreamHeader, HEADER_LEN, STREAM_MAGIC, STREAM_VERSION};
pub use rle::{
    read_block, read_symbols, rle_decode, rle_encode, write_block, write_symbols, EncodedBlock,
    RleSymbol,
};

use crate::error::{Error, Result, Stage};
use crate::scan::{cubic_zigzag_order, per_band_zigzag_order, raster_order_3d, ScanOrder};
use crate::transform::Dct3Plan;
use crate::volume_io::Volume;

/// Block sides the codec accepts.
pub const BLOCK_SIZES: [usize; 4] = [2, 4, 8, 16];

/// Decoder refuses streams that would reconstruct more samples than this
/// (padding included).
pub const MAX_DECODED_SAMPLES: u64 = 1 << 30;

/// Coefficient scan used before run-length coding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScanId {
    Raster3d,
    Zigzag3d,
    Zigzag2dPerBand,
}

impl ScanId {
    pub const ALL: [ScanId; 3] = [ScanId::Raster3d, ScanId::Zigzag3d, ScanId::Zigzag2dPerBand];

    pub fn id(self) -> u8 {
        match self {
            ScanId::Raster3d => 0,
            ScanId::Zigzag3d => 1,
            ScanId::Zigzag2dPerBand => 2,
        }
    }

    pub fn from_id(id: u8) -> Option<Self> {
        ScanId::ALL.into_iter().find(|s| s.id() == id)
    }

    pub fn name(self) -> &'static str {
        match self {
            ScanId::Raster3d => "raster3d",
            ScanId::Zigzag3d => "zigzag3d",
            ScanId::Zigzag2dPerBand => "zigzag2d_per_band",
        }
    }

    /// The scan order for a cube of side `n`.
    pub fn order(self, n: usize) -> Result<ScanOrder> {
        match self {
            ScanId::Raster3d => raster_order_3d(n),
            ScanId::Zigzag3d => cubic_zigzag_order(n),
            ScanId::Zigzag2dPerBand => per_band_zigzag_order(n),
        }
    }
}

impl fmt::Display for ScanId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScanId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScanId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown scan '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodecConfig {
    pub block_size: usize,
    pub quant_step: u16,
    pub scan: ScanId,
}

impl CodecConfig {
    pub fn new(block_size: usize, quant_step: u16, scan: ScanId) -> Result<Self> {
        let cfg = CodecConfig {
            block_size,
            quant_step,
            scan,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !BLOCK_SIZES.contains(&self.block_size) {
            return Err(Error::Config(format!(
                "block size {} not in {BLOCK_SIZES:?}",
                self.block_size
            )));
        }
        if self.quant_step == 0 {
            return Err(Error::Config("quant step must be at least 1".into()));
        }
        Ok(())
    }
}

impl Default for CodecConfig {
    fn default() -> Self {
        CodecConfig {
            block_size: 8,
            quant_step: 8,
            scan: ScanId::Zigzag3d,
        }
    }
}

/// Compresses `v` into a `ZZC1` stream.
pub fn encode_volume(v: &Volume, cfg: &CodecConfig) -> Result<Vec<u8>> {
    cfg.validate()?;
    let extent = |e: usize| {
        u32::try_from(e).map_err(|_| Error::InvalidDimension(format!("extent {e} exceeds u32")))
    };
    let header = StreamHeader {
        config: *cfg,
        rows: extent(v.rows())?,
        cols: extent(v.cols())?,
        bands: extent(v.bands())?,
    };

    let n = cfg.block_size;
    let (blocks, _) = partition_blocks(v, n)?;
    let plan = Dct3Plan::new(n, n, n)?;
    let order = cfg.scan.order(n)?;

    let encoded = blocks
        .par_iter()
        .map(|block| -> Result<EncodedBlock> {
            let shifted = level_shift(block, ShiftDirection::Forward);
            let coeffs = plan.forward(&shifted)?;
            let q = quantize(&coeffs, cfg.quant_step);
            Ok(rle_encode(&order.gather(&q)?))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut out = header.to_bytes().to_vec();
    out.extend_from_slice(write_symbols(&encoded).as_bytes());
    Ok(out)
}

/// Decompresses a `ZZC1` stream.
pub fn decode_volume(bytes: &[u8]) -> Result<Volume> {
    let header = StreamHeader::parse(bytes)?;
    let cfg = header.config;
    let n = cfg.block_size;
    let payload = &bytes[HEADER_LEN..];

    let blocks_along = |e: u32| (e as u128).div_ceil(n as u128);
    let block_count =
        blocks_along(header.rows) * blocks_along(header.cols) * blocks_along(header.bands);
    if block_count > payload.len() as u128 * 8 {
        return Err(Error::corrupt(
            Stage::Entropy,
            format!(
                "payload of {} bytes cannot hold {block_count} blocks",
                payload.len()
            ),
        ));
    }
    if block_count * (n as u128).pow(3) > MAX_DECODED_SAMPLES as u128 {
        return Err(Error::corrupt(
            Stage::Header,
            format!("{block_count} blocks exceed the decoder limit"),
        ));
    }

    let geom = BlockGeometry::new(
        header.rows as usize,
        header.cols as usize,
        header.bands as usize,
        n,
    )?;
    let symbols = read_symbols(payload, geom.block_count(), geom.block_volume())?;
    let plan = Dct3Plan::new(n, n, n)?;
    let order = cfg.scan.order(n)?;

    let reconstruct = |block: &EncodedBlock| -> Result<Vec<u8>> {
        let scanned = rle_decode(block, geom.block_volume())?;
        let q = order.scatter(&scanned)?;
        let coeffs = dequantize(&q, n, cfg.quant_step)?;
        Ok(to_samples(&plan.inverse(&coeffs)?))
    };
    let samples = symbols
        .par_iter()
        .map(reconstruct)
        .collect::<Result<Vec<_>>>()
        .map_err(|e| match e {
            e @ Error::Corrupt { .. } => e,
            other => Error::corrupt(Stage::Reconstruct, other.to_string()),
        })?;
    assemble_blocks(&samples, &geom)
}

/// Peak signal-to-noise ratio for 8-bit data; `f64::INFINITY` when the
/// volumes are identical.
pub fn psnr(a: &Volume, b: &Volume) -> Result<f64> {
    if a.dims() != b.dims() {
        let fmt = |v: &Volume| format!("{}x{}x{}", v.rows(), v.cols(), v.bands());
        return Err(Error::Shape {
            expected: fmt(a),
            actual: fmt(b),
        });
    }
    let sse: f64 = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(&x, &y)| {
            let d = x as f64 - y as f64;
            d * d
        })
        .sum();
    let mse = sse / a.len() as f64;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (255.0f64 * 255.0 / mse).log10())
}

/// Size and distortion of one codec run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityReport {
    pub scan: ScanId,
    pub compressed_bytes: usize,
    pub psnr_db: f64,
}

/// Encodes `v` once per scan order with the same block size and quant step.
pub fn compare_scan_orders(
    v: &Volume,
    block_size: usize,
    quant_step: u16,
) -> Result<Vec<QualityReport>> {
    ScanId::ALL
        .into_iter()
        .map(|scan| {
            let cfg = CodecConfig::new(block_size, quant_step, scan)?;
            let bytes = encode_volume(v, &cfg)?;
            let decoded = decode_volume(&bytes)?;
            Ok(QualityReport {
                scan,
                compressed_bytes: bytes.len(),
                psnr_db: psnr(v, &decoded)?,
            })
        })
        .collect()
}
