//! Times compressed and dense operations over a few sizes.
//!
//! ```text
//! cargo run --release --example timing -- 200 400 800
//! ```

use compressed_matrix::bench::{bench_suite, BenchOp, Variant, MIN_REPEATS};

fn main() -> compressed_matrix::Result<()> {
    let mut sizes: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if sizes.is_empty() {
        sizes = vec![100, 200, 400];
    }
    let ops = [BenchOp::Add, BenchOp::Scale, BenchOp::Dot, BenchOp::Compress, BenchOp::Decompress];
    let records = bench_suite(&sizes, &ops, MIN_REPEATS, false)?;
    println!("{:<11} {:>6} {:>12} {:>12} {:>8}", "op", "n", "compressed", "dense", "ratio");
    for op in ops {
        for &n in &sizes {
            let find = |v: Variant| records.iter().find(|r| r.op == op && r.n == n && r.variant == v).map(|r| r.seconds);
            let (Some(c), d) = (find(Variant::Compressed), find(Variant::Dense)) else { continue };
            match d {
                Some(d) => println!("{:<11} {n:>6} {:>10.3}ms {:>10.3}ms {:>7.2}x", op.name(), c * 1e3, d * 1e3, d / c),
                None => println!("{:<11} {n:>6} {:>10.3}ms {:>12} {:>8}", op.name(), c * 1e3, "-", "-"),
            }
        }
    }
    Ok(())
}
