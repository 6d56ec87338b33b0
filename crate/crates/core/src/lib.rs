//! Fixed-rate lossy compression for matrices of `f64`, with linear algebra
//! performed directly on the compressed representation.
//!
//! A matrix is split into 8×8 blocks. Each block is stored as two `f64`
//! values (first element and mean slope), an 8-bit scale factor and 28
//! signed 8-bit transform coefficients: 360 bits instead of 4096, a fixed
//! rate of 4096/360 ≈ 11.378.
//!
//! - [`codec`]: the per-block pipeline (normalization, slope prediction,
//!   DCT-II, coefficient quantization) and its inverse.
//! - [`ops`]: addition, subtraction, scaling, dot products and products on
//!   compressed blocks.
//! - [`matrix`]: tiling, block-wise dispatch and dense reference kernels.
//! - [`format`]: the `.blzc` / `.blzd` binary formats and CSV import.
//! - [`bench`]: test-matrix generation, accuracy tables and timing runs.
//!
//! ```
//! use compressed_matrix::{bench::TestFunction, matrix};
//!
//! let m = TestFunction::F1.grid(64).unwrap();
//! let c = matrix::compress_matrix(&m).unwrap();
//! let doubled = matrix::mat_scale(&c, 2.0).unwrap();
//! let back = matrix::decompress_matrix(&doubled);
//! assert_eq!((back.rows(), back.cols()), (64, 64));
//! ```

pub mod bench;
pub mod cli;
pub mod codec;
mod error;
pub mod format;
pub mod matrix;
pub mod ops;

pub use codec::{CompressedBlock, DenseBlock, BLOCK, KEPT};
pub use error::{Error, Result};
pub use matrix::{CompressedMatrix, DenseMatrix};
