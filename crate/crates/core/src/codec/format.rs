//! `ZZC1` stream header.
//!
//! | offset | size | field                                   |
//! |--------|------|-----------------------------------------|
//! | 0      | 4    | magic `5A 5A 43 31` (`ZZC1`)            |
//! | 4      | 1    | version, `1`                            |
//! | 5      | 1    | scan id (0 raster3d, 1 zigzag3d, 2 zigzag2d_per_band) |
//! | 6      | 1    | block size                              |
//! | 7      | 1    | reserved, `0`                           |
//! | 8      | 2    | quant step, `u16` LE                    |
//! | 10     | 4    | rows, `u32` LE                          |
//! | 14     | 4    | cols, `u32` LE                          |
//! | 18     | 4    | bands, `u32` LE                         |
//!
//! The bit-packed block payload starts at byte 22.

use super::{CodecConfig, ScanId};
use crate::error::{Error, Result, Stage};
use crate::volume_io::le_u32;

pub const STREAM_MAGIC: [u8; 4] = *b"ZZC1";
pub const STREAM_VERSION: u8 = 1;
pub const HEADER_LEN: usize = 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamHeader {
    pub config: CodecConfig,
    pub rows: u32,
    pub cols: u32,
    pub bands: u32,
}

impl StreamHeader {
    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[..4].copy_from_slice(&STREAM_MAGIC);
        out[4] = STREAM_VERSION;
        out[5] = self.config.scan.id();
        out[6] = self.config.block_size as u8;
        out[7] = 0;
        out[8..10].copy_from_slice(&self.config.quant_step.to_le_bytes());
        out[10..14].copy_from_slice(&self.rows.to_le_bytes());
        out[14..18].copy_from_slice(&self.cols.to_le_bytes());
        out[18..22].copy_from_slice(&self.bands.to_le_bytes());
        out
    }

    /// Parses and validates the header at the start of `bytes`.
    pub fn parse(bytes: &[u8]) -> Result<Self> {
        let bad = |detail: String| Error::corrupt(Stage::Header, detail);
        if bytes.len() < HEADER_LEN {
            return Err(bad(format!("truncated header ({} bytes)", bytes.len())));
        }
        if bytes[..4] != STREAM_MAGIC {
            return Err(bad("bad magic".into()));
        }
        if bytes[4] != STREAM_VERSION {
            return Err(bad(format!("unsupported version {}", bytes[4])));
        }
        let scan = ScanId::from_id(bytes[5])
            .ok_or_else(|| bad(format!("unknown scan id {}", bytes[5])))?;
        if bytes[7] != 0 {
            return Err(bad(format!("reserved byte is {}", bytes[7])));
        }
        let quant_step = u16::from_le_bytes([bytes[8], bytes[9]]);
        let config = CodecConfig::new(bytes[6] as usize, quant_step, scan)
            .map_err(|e| bad(e.to_string()))?;
        let (rows, cols, bands) = (le_u32(bytes, 10), le_u32(bytes, 14), le_u32(bytes, 18));
        if rows == 0 || cols == 0 || bands == 0 {
            return Err(bad(format!("zero extent {rows}x{cols}x{bands}")));
        }
        Ok(StreamHeader {
            config,
            rows,
            cols,
            bands,
        })
    }
}
