//! Volumes of 8-bit samples and the file formats they travel in.
//!
//! * `ZZV1` raw volumes: magic `ZZV1`, then `rows`, `cols`, `bands` as
//!   little-endian `u32`, then `rows * cols * bands` samples, band-major then
//!   row-major.
//! * Binary PGM (P5, maxval 255) frame sequences, one frame per band.
//! * CSV spectrum traces.

mod pgm;
mod rng;
mod synth;

pub use pgm::{
    decode_pgm, encode_pgm, read_pgm_sequence, volume_from_frames, write_pgm_sequence, Frame,
};
pub use rng::Rng;
pub use synth::{synth_volume, SynthKind};

use crate::error::{Error, Result};

pub const VOL_MAGIC: [u8; 4] = *b"ZZV1";
pub const VOL_HEADER_LEN: usize = 16;

/// A 3D grid of 8-bit samples, band-major then row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Volume {
    rows: usize,
    cols: usize,
    bands: usize,
    samples: Vec<u8>,
}

impl Volume {
    pub fn new(rows: usize, cols: usize, bands: usize, samples: Vec<u8>) -> Result<Self> {
        if rows == 0 || cols == 0 || bands == 0 {
            return Err(Error::InvalidDimension(format!(
                "volume extents must be positive, got {rows}x{cols}x{bands}"
            )));
        }
        let expected = rows
            .checked_mul(cols)
            .and_then(|v| v.checked_mul(bands))
            .ok_or_else(|| Error::InvalidDimension("volume too large".into()))?;
        if samples.len() != expected {
            return Err(Error::Shape {
                expected: format!("{expected} samples for {rows}x{cols}x{bands}"),
                actual: format!("{} samples", samples.len()),
            });
        }
        Ok(Volume {
            rows,
            cols,
            bands,
            samples,
        })
    }

    pub fn filled(rows: usize, cols: usize, bands: usize, value: u8) -> Result<Self> {
        Volume::new(rows, cols, bands, vec![value; rows * cols * bands])
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        bands: usize,
        mut f: impl FnMut(usize, usize, usize) -> u8,
    ) -> Result<Self> {
        let mut samples = Vec::with_capacity(rows * cols * bands);
        for b in 0..bands {
            for r in 0..rows {
                for c in 0..cols {
                    samples.push(f(r, c, b));
                }
            }
        }
        Volume::new(rows, cols, bands, samples)
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

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.rows, self.cols, self.bands)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn get(&self, row: usize, col: usize, band: usize) -> u8 {
        self.samples[(band * self.rows + row) * self.cols + col]
    }

    pub fn samples(&self) -> &[u8] {
        &self.samples
    }

    /// Samples of one band, row-major.
    pub fn band(&self, band: usize) -> &[u8] {
        let plane = self.rows * self.cols;
        &self.samples[band * plane..(band + 1) * plane]
    }

    pub fn into_samples(self) -> Vec<u8> {
        self.samples
    }
}

/// Serializes a volume in the `ZZV1` format.
pub fn write_vol(v: &Volume) -> Vec<u8> {
    let mut out = Vec::with_capacity(VOL_HEADER_LEN + v.len());
    out.extend_from_slice(&VOL_MAGIC);
    for extent in [v.rows, v.cols, v.bands] {
        out.extend_from_slice(&(extent as u32).to_le_bytes());
    }
    out.extend_from_slice(&v.samples);
    out
}

/// Parses a `ZZV1` volume. The payload must be exactly the size the header
/// announces.
pub fn read_vol(bytes: &[u8]) -> Result<Volume> {
    const NAME: &str = "ZZV1";
    if bytes.len() < VOL_HEADER_LEN {
        return Err(Error::format(
            NAME,
            format!("truncated header ({} bytes)", bytes.len()),
        ));
    }
    if bytes[..4] != VOL_MAGIC {
        return Err(Error::format(NAME, "bad magic"));
    }
    let (rows, cols, bands) = (le_u32(bytes, 4), le_u32(bytes, 8), le_u32(bytes, 12));
    if rows == 0 || cols == 0 || bands == 0 {
        return Err(Error::format(
            NAME,
            format!("zero extent {rows}x{cols}x{bands}"),
        ));
    }
    let payload = &bytes[VOL_HEADER_LEN..];
    let expected = (rows as u128) * (cols as u128) * (bands as u128);
    if payload.len() as u128 != expected {
        return Err(Error::format(
            NAME,
            format!(
                "size mismatch: header {rows}x{cols}x{bands} needs {expected} samples, found {}",
                payload.len()
            ),
        ));
    }
    Volume::new(
        rows as usize,
        cols as usize,
        bands as usize,
        payload.to_vec(),
    )
}

pub(crate) fn le_u32(bytes: &[u8], at: usize) -> u32 {
    u32::from_le_bytes([bytes[at], bytes[at + 1], bytes[at + 2], bytes[at + 3]])
}

/// A zigzag-ordered coefficient sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTrace {
    pub label: String,
    pub values: Vec<f64>,
}

/// Renders a trace as `index,coefficient` CSV.
///
/// Coefficients use the shortest decimal form that parses back to the same
/// `f64`, which never loses significant digits.
pub fn write_csv_spectrum(trace: &SpectrumTrace) -> Result<String> {
    if trace.values.is_empty() {
        return Err(Error::InvalidDimension("empty spectrum trace".into()));
    }
    let mut out = String::with_capacity(trace.values.len() * 24 + 18);
    out.push_str("index,coefficient\n");
    for (i, v) in trace.values.iter().enumerate() {
        use std::fmt::Write;
        writeln!(out, "{i},{v}").expect("writing to a String");
    }
    Ok(out)
}
