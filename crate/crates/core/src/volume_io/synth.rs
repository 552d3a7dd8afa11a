use std::f64::consts::PI;

use super::{Rng, Volume};
use crate::error::{Error, Result};

/// Deterministic test-volume generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthKind {
    /// `round(255 * u)` with `u` drawn from [`Rng`], cells filled band-major.
    UniformRandom,
    /// Separable sinusoids; no randomness, the seed is ignored.
    Smooth,
}

pub fn synth_volume(
    kind: SynthKind,
    rows: usize,
    cols: usize,
    bands: usize,
    seed: u64,
) -> Result<Volume> {
    if rows == 0 || cols == 0 || bands == 0 {
        return Err(Error::InvalidDimension(format!(
            "synthetic volume extents must be positive, got {rows}x{cols}x{bands}"
        )));
    }
    match kind {
        SynthKind::UniformRandom => {
            let mut rng = Rng::new(seed);
            Volume::from_fn(rows, cols, bands, |_, _, _| {
                (255.0 * rng.next_f64()).round() as u8
            })
        }
        SynthKind::Smooth => Volume::from_fn(rows, cols, bands, |r, c, b| {
            let v = 128.0
                + 60.0
                    * (2.0 * PI * r as f64 / rows as f64).sin()
                    * (2.0 * PI * c as f64 / cols as f64).cos()
                + 40.0 * (2.0 * PI * b as f64 / bands as f64).cos();
            v.round().clamp(0.0, 255.0) as u8
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_origin() {
        let v = synth_volume(SynthKind::Smooth, 16, 16, 16, 0).unwrap();
        assert_eq!(v.get(0, 0, 0), 168);
        assert_eq!(v, synth_volume(SynthKind::Smooth, 16, 16, 16, 99).unwrap());
    }

    #[test]
    fn uniform_is_seeded() {
        let a = synth_volume(SynthKind::UniformRandom, 4, 5, 6, 7).unwrap();
        let b = synth_volume(SynthKind::UniformRandom, 4, 5, 6, 7).unwrap();
        let c = synth_volume(SynthKind::UniformRandom, 4, 5, 6, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn uniform_follows_the_rng_stream() {
        let v = synth_volume(SynthKind::UniformRandom, 2, 2, 2, 0).unwrap();
        let mut rng = Rng::new(0);
        for &s in v.samples() {
            assert_eq!(s, (255.0 * rng.next_f64()).round() as u8);
        }
    }

    #[test]
    fn zero_extent() {
        assert!(synth_volume(SynthKind::Smooth, 0, 1, 1, 0).is_err());
    }
}
