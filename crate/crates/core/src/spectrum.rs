//! Zigzag-ordered DCT spectra of seeded uniform random data.

use crate::error::Result;
use crate::scan::{apply_scan, cubic_zigzag_order, square_zigzag_order};
use crate::transform::{dct2d, dct3d, Cube, Matrix};
use crate::volume_io::{synth_volume, SpectrumTrace, SynthKind, Volume};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMode {
    /// `n x n` matrix, 2D DCT, square zigzag.
    TwoD,
    /// `n^3` cube, 3D DCT, cubic zigzag.
    ThreeD,
}

/// The source samples a spectrum is computed from.
pub fn spectrum_source(n: usize, mode: SpectrumMode, seed: u64) -> Result<Volume> {
    let bands = match mode {
        SpectrumMode::TwoD => 1,
        SpectrumMode::ThreeD => n,
    };
    synth_volume(SynthKind::UniformRandom, n, n, bands, seed)
}

/// Transforms seeded random data and reads the coefficients in zigzag order.
pub fn spectrum(n: usize, mode: SpectrumMode, seed: u64) -> Result<SpectrumTrace> {
    let source = spectrum_source(n, mode, seed)?;
    let samples: Vec<f64> = source.samples().iter().map(|&s| s as f64).collect();
    let (values, label) = match mode {
        SpectrumMode::TwoD => {
            let coeffs = dct2d(&Matrix::new(n, n, samples)?)?;
            (apply_scan(&coeffs, &square_zigzag_order(n)?)?, "zigzag2d")
        }
        SpectrumMode::ThreeD => {
            let coeffs = dct3d(&Cube::new(n, n, n, samples)?)?;
            (apply_scan(&coeffs, &cubic_zigzag_order(n)?)?, "zigzag3d")
        }
    };
    Ok(SpectrumTrace {
        label: format!("{label} n={n} seed={seed}"),
        values,
    })
}
