//! Dot products and matrix products computed from compressed operands.
//!
//! ```text
//! cargo run --release --example products
//! ```

use compressed_matrix::bench::{mean_relative_error, TestFunction};
use compressed_matrix::matrix::{compress_matrix, dense, mat_dot, mat_mul, mat_mul_dense};
use compressed_matrix::ops::{dot, reconstruct_cols, reconstruct_rows};

fn main() -> compressed_matrix::Result<()> {
    let n = 128;
    let a = TestFunction::F1.grid(n)?;
    let b = TestFunction::F2.grid(n)?;
    let (ca, cb) = (compress_matrix(&a)?, compress_matrix(&b)?);

    // One output entry only needs row i of each left block and column j of
    // each right block.
    let (i, j) = (17, 90);
    println!(
        "entry ({i},{j}): compressed {:.6}, dense {:.6}",
        mat_dot(&ca, &cb, i, j)?,
        dense::dot(&a, &b, i, j)?
    );

    let block = ca.blocks()[0];
    let rows = reconstruct_rows(&block, 3)?;
    let cols = reconstruct_cols(&cb.blocks()[0], 5)?;
    println!(
        "block-level: rows 0..=3 decoded ({} lines), columns 0..=5 decoded ({} lines), dot = {:.6}",
        rows.extent(),
        cols.extent(),
        dot(&block, &cb.blocks()[0], 3, 5)?
    );

    let reference = dense::mul(&a, &b)?;
    let product = mat_mul_dense(&ca, &cb)?;
    let recompressed = mat_mul(&ca, &cb)?;
    println!(
        "M1 x M2: {:.3}% before recompression, {:.3}% after",
        100.0 * mean_relative_error(&reference, &product)?.mean,
        100.0 * mean_relative_error(&reference, &compressed_matrix::matrix::decompress_matrix(&recompressed))?.mean
    );
    Ok(())
}
