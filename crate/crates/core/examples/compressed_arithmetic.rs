//! Adds, subtracts and scales matrices without decompressing them, then
//! compares against the same operations on the original values.
//!
//! ```text
//! cargo run --release --example compressed_arithmetic
//! ```

use compressed_matrix::bench::{mean_relative_error, TestFunction};
use compressed_matrix::matrix::{compress_matrix, decompress_matrix, dense, mat_add, mat_scale, mat_sub};
use compressed_matrix::ops;
use compressed_matrix::CompressedBlock;

fn main() -> compressed_matrix::Result<()> {
    let n = 256;
    let a = TestFunction::F1.grid(n)?;
    let b = TestFunction::F5.grid(n)?;
    let (ca, cb) = (compress_matrix(&a)?, compress_matrix(&b)?);

    let sum = mat_add(&ca, &cb)?;
    let e = mean_relative_error(&dense::add(&a, &b)?, &decompress_matrix(&sum))?;
    println!("M1 + M5: mean relative error {:.3}%", 100.0 * e.mean);

    let diff = mat_sub(&sum, &cb)?;
    let e = mean_relative_error(&a, &decompress_matrix(&diff))?;
    println!("(M1 + M5) - M5 vs M1: {:.3}%", 100.0 * e.mean);

    // Scaling touches only the offset and slope, so the error does not move.
    let rt = mean_relative_error(&a, &decompress_matrix(&ca))?.mean;
    for c in [2.0, -3.0, 0.5] {
        let scaled = decompress_matrix(&mat_scale(&ca, c)?);
        let e = mean_relative_error(&dense::scale(&a, c)?, &scaled)?.mean;
        println!("{c:>4} * M1: {:.6}% (round trip {:.6}%)", 100.0 * e, 100.0 * rt);
    }

    // Constant blocks take a shortcut that only shifts the offset.
    let block = ca.blocks()[0];
    let shifted = ops::add(&block, &CompressedBlock::constant(10.0)?)?;
    println!(
        "block + 10: f {:.4} -> {:.4}, coefficients unchanged: {}",
        block.f(),
        shifted.f(),
        block.coeffs() == shifted.coeffs()
    );
    Ok(())
}
