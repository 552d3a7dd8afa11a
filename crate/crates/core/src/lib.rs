//! Zigzag scan orders in two and three dimensions, separable orthonormal
//! DCT-II, and a small volumetric block codec built on them.
//!
//! Indexing is 0-based everywhere. Note that the square 2D zigzag here steps
//! down to `(1, 0)` first, which makes it the transpose of the ISO JPEG
//! table.

pub mod codec;
pub mod error;
pub mod scan;
pub mod spectrum;
pub mod transform;
pub mod volume_io;

pub use error::{Error, Result, Stage};
