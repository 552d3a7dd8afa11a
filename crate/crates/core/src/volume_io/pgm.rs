use std::path::{Path, PathBuf};

use super::Volume;
use crate::error::{Error, Result};

/// A decoded P5 frame: `rows x cols` samples, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub rows: usize,
    pub cols: usize,
    pub samples: Vec<u8>,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&b) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if b == b'\n' || b == b'\r' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn header_uint(&mut self, what: &str) -> std::result::Result<usize, String> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(format!("expected {what}"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse::<usize>().ok())
            .ok_or_else(|| format!("{what} out of range"))
    }
}

/// Parses a binary PGM (P5) image with maxval 255. `name` labels errors.
pub fn decode_pgm(name: &str, bytes: &[u8]) -> Result<Frame> {
    let fail = |detail: String| Error::format(name, detail);
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        return Err(fail("not a binary PGM (P5) file".into()));
    }
    let mut cur = Cursor { bytes, pos: 2 };
    let cols = cur.header_uint("width").map_err(fail)?;
    let rows = cur.header_uint("height").map_err(fail)?;
    let maxval = cur.header_uint("maxval").map_err(fail)?;
    if cols == 0 || rows == 0 {
        return Err(fail(format!("zero extent {cols}x{rows}")));
    }
    if maxval != 255 {
        return Err(fail(format!("maxval {maxval} unsupported (need 255)")));
    }
    match bytes.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
        _ => return Err(fail("missing whitespace after maxval".into())),
    }
    let data = &bytes[cur.pos..];
    let expected = rows
        .checked_mul(cols)
        .ok_or_else(|| fail("image too large".into()))?;
    if data.len() != expected {
        return Err(fail(format!(
            "pixel data is {} bytes, expected {expected} for {cols}x{rows}",
            data.len()
        )));
    }
    Ok(Frame {
        rows,
        cols,
        samples: data.to_vec(),
    })
}

/// Serializes one row-major frame as binary PGM.
pub fn encode_pgm(rows: usize, cols: usize, samples: &[u8]) -> Vec<u8> {
    debug_assert_eq!(samples.len(), rows * cols);
    let mut out = format!("P5\n{cols} {rows}\n255\n").into_bytes();
    out.extend_from_slice(samples);
    out
}

/// Stacks named PGM images into a volume, frame `i` becoming band `i`.
pub fn volume_from_frames<N: AsRef<str>, B: AsRef<[u8]>>(frames: &[(N, B)]) -> Result<Volume> {
    let Some(((first_name, _), _)) = frames.split_first() else {
        return Err(Error::InvalidDimension("no frames given".into()));
    };
    let mut dims = None;
    let mut samples = Vec::new();
    for (name, bytes) in frames {
        let name = name.as_ref();
        let frame = decode_pgm(name, bytes.as_ref())?;
        match dims {
            None => dims = Some((frame.rows, frame.cols)),
            Some((r, c)) if (r, c) != (frame.rows, frame.cols) => {
                return Err(Error::format(
                    name,
                    format!(
                        "frame is {}x{}, but {} is {c}x{r}",
                        frame.cols,
                        frame.rows,
                        first_name.as_ref()
                    ),
                ));
            }
            Some(_) => {}
        }
        samples.extend_from_slice(&frame.samples);
    }
    let (rows, cols) = dims.expect("at least one frame");
    Volume::new(rows, cols, frames.len(), samples)
}

/// Reads a sequence of PGM files into a volume, in the order given.
pub fn read_pgm_sequence<P: AsRef<Path>>(paths: &[P]) -> Result<Volume> {
    let frames = paths
        .iter()
        .map(|p| {
            let p = p.as_ref();
            std::fs::read(p)
                .map(|bytes| (p.display().to_string(), bytes))
                .map_err(|e| Error::io(p, e))
        })
        .collect::<Result<Vec<_>>>()?;
    volume_from_frames(&frames)
}

/// Writes each band of `v` to `dir/{stem}_{band:04}.pgm` and returns the paths.
pub fn write_pgm_sequence(v: &Volume, dir: &Path, stem: &str) -> Result<Vec<PathBuf>> {
    (0..v.bands())
        .map(|b| {
            let path = dir.join(format!("{stem}_{b:04}.pgm"));
            std::fs::write(&path, encode_pgm(v.rows(), v.cols(), v.band(b)))
                .map_err(|e| Error::io(&path, e))?;
            Ok(path)
        })
        .collect()
}
