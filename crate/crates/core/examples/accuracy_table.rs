//! Prints the full accuracy table: round trips, pairwise sums, scaling and
//! pairwise products of the six test matrices.
//!
//! ```text
//! cargo run --release --example accuracy_table -- 256
//! ```

use compressed_matrix::bench::{accuracy_suite, write_accuracy_csv};

fn main() -> compressed_matrix::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(128);
    let table = accuracy_suite(n)?;
    for r in &table {
        println!("{:<5} {:>3} {:>3}  {:>10.4}%", r.op, r.lhs, r.rhs, 100.0 * r.error);
    }
    let mut csv = Vec::new();
    write_accuracy_csv(&table, &mut csv)?;
    println!("\n{} rows, {} bytes as CSV", table.len(), csv.len());
    Ok(())
}
