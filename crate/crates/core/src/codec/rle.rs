//! Run-length symbols and their Exp-Golomb serialization.
//!
//! A block of scanned coefficients becomes a list of `(run, level)` pairs:
//! `run` zeros followed by the non-zero `level`. Zeros after the last
//! non-zero coefficient are implicit. On the wire each block is its symbol
//! count `K` (`ue`), then `K` pairs of `run` (`ue`) and `level` (`se`).

use super::bits::{BitReader, BitWriter};
use crate::error::{Error, Result, Stage};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RleSymbol {
    pub run: u32,
    pub level: i32,
}

impl RleSymbol {
    pub const fn new(run: u32, level: i32) -> Self {
        RleSymbol { run, level }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EncodedBlock {
    pub symbols: Vec<RleSymbol>,
}

impl EncodedBlock {
    /// Number of coefficient positions the symbols cover.
    pub fn span(&self) -> u64 {
        self.symbols.iter().map(|s| s.run as u64 + 1).sum()
    }
}

pub fn rle_encode(coeffs: &[i32]) -> EncodedBlock {
    let mut symbols = Vec::new();
    let mut run = 0u32;
    for &c in coeffs {
        if c == 0 {
            run += 1;
        } else {
            symbols.push(RleSymbol::new(run, c));
            run = 0;
        }
    }
    EncodedBlock { symbols }
}

/// Expands symbols back into `len` coefficients.
pub fn rle_decode(block: &EncodedBlock, len: usize) -> Result<Vec<i32>> {
    let mut out = vec![0; len];
    let mut pos = 0usize;
    for s in &block.symbols {
        if s.level == 0 {
            return Err(Error::corrupt(
                Stage::Entropy,
                "zero level in run-length symbol",
            ));
        }
        pos = pos
            .checked_add(s.run as usize)
            .filter(|&p| p < len)
            .ok_or_else(|| {
                Error::corrupt(
                    Stage::Entropy,
                    format!("run overflows block of {len} coefficients"),
                )
            })?;
        out[pos] = s.level;
        pos += 1;
    }
    Ok(out)
}

/// Appends one block to `w`.
pub fn write_block(w: &mut BitWriter, block: &EncodedBlock) {
    w.write_ue(block.symbols.len() as u32);
    for s in &block.symbols {
        w.write_ue(s.run);
        w.write_se(s.level);
    }
}

/// Reads one block covering at most `block_volume` coefficients.
pub fn read_block(r: &mut BitReader<'_>, block_volume: usize) -> Result<EncodedBlock> {
    let count = r.read_ue()? as usize;
    if count > block_volume {
        return Err(Error::corrupt(
            Stage::Entropy,
            format!("{count} symbols exceed block volume {block_volume}"),
        ));
    }
    let mut symbols = Vec::with_capacity(count);
    let mut span = 0u64;
    for _ in 0..count {
        let run = r.read_ue()?;
        let level = r.read_se()?;
        if level == 0 {
            return Err(Error::corrupt(
                Stage::Entropy,
                "zero level in run-length symbol",
            ));
        }
        span += run as u64 + 1;
        if span > block_volume as u64 {
            return Err(Error::corrupt(
                Stage::Entropy,
                format!("runs overflow block volume {block_volume}"),
            ));
        }
        symbols.push(RleSymbol::new(run, level));
    }
    Ok(EncodedBlock { symbols })
}

/// Serializes blocks back to back, MSB-first, zero-padded to a byte.
pub fn write_symbols(blocks: &[EncodedBlock]) -> BitWriter {
    let mut w = BitWriter::new();
    for b in blocks {
        write_block(&mut w, b);
    }
    w
}

/// Parses exactly `block_count` blocks from `bytes`; anything after the last
/// block other than sub-byte zero padding is rejected.
pub fn read_symbols(
    bytes: &[u8],
    block_count: usize,
    block_volume: usize,
) -> Result<Vec<EncodedBlock>> {
    // every block needs at least one bit
    if block_count > bytes.len().saturating_mul(8) {
        return Err(Error::corrupt(
            Stage::Entropy,
            format!(
                "{} payload bytes cannot hold {block_count} blocks",
                bytes.len()
            ),
        ));
    }
    let mut r = BitReader::new(bytes);
    let blocks = (0..block_count)
        .map(|_| read_block(&mut r, block_volume))
        .collect::<Result<Vec<_>>>()?;
    r.expect_padding()?;
    Ok(blocks)
}
