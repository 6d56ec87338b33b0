//! Compresses each built-in test function and reports the round-trip error.
//!
//! ```text
//! cargo run --release --example round_trip -- 512
//! ```

use compressed_matrix::bench::{mean_relative_error, TestFunction};
use compressed_matrix::matrix::{compress_matrix, decompress_matrix};
use compressed_matrix::codec::COMPRESSION_RATE;

fn main() -> compressed_matrix::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(256);
    println!("{n}x{n} grids, fixed rate {COMPRESSION_RATE:.3}:1");
    println!("{:<6} {:>10} {:>10} {:>9}", "matrix", "max |err|", "mean rel", "excluded");
    for f in TestFunction::ALL {
        let m = f.grid(n)?;
        let back = decompress_matrix(&compress_matrix(&m)?);
        let max_abs = m
            .values()
            .iter()
            .zip(back.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let rel = mean_relative_error(&m, &back)?;
        println!(
            "{:<6} {:>10.2e} {:>9.3}% {:>9}",
            f.matrix_label(),
            max_abs,
            100.0 * rel.mean,
            rel.excluded
        );
    }
    Ok(())
}
