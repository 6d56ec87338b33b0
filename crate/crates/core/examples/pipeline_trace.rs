//! Walks one block through every compression stage and prints each
//! intermediate result.
//!
//! ```text
//! cargo run --example pipeline_trace
//! ```

use compressed_matrix::bench::example_block;
use compressed_matrix::codec::{decompress_block, trace_block, Grid, BLOCK, KEEP_SET};

fn print_grid(title: &str, g: &Grid, fmt: impl Fn(f64) -> String) {
    println!("{title}");
    for row in g {
        let cells: Vec<String> = row.iter().map(|&v| fmt(v)).collect();
        println!("  {}", cells.join(" "));
    }
}

fn main() -> compressed_matrix::Result<()> {
    let block = example_block();
    print_grid("input block", block.values(), |v| format!("{v:7.3}"));

    let trace = trace_block(&block)?;
    print_grid("row/column differences", trace.deltas.values(), |v| format!("{v:7.4}"));

    let cb = trace.compressed;
    let Some(stages) = trace.stages else {
        println!("constant block: f = {}", cb.f());
        return Ok(());
    };
    println!("mean slope s = {}", cb.s());
    print_grid("slopes divided by s", stages.normalized.values(), |v| format!("{v:7.3}"));
    println!(
        "reference slopes from {:.4} in steps of {:.5}",
        stages.quantizer.lo(),
        stages.quantizer.step()
    );
    println!("level indices");
    for row in &stages.prediction.indices {
        let cells: Vec<String> = row.iter().map(|k| format!("{k:4}")).collect();
        println!("  {}", cells.join(""));
    }
    print_grid("DCT spectrum", &stages.spectrum, |v| format!("{v:7.3}"));

    println!("phi = {}", cb.phi());
    let mut kept = [[None; BLOCK]; BLOCK];
    for (&(i, j), &c) in KEEP_SET.iter().zip(cb.coeffs()) {
        kept[i][j] = Some(c);
    }
    println!("stored coefficients (. = dropped)");
    for row in &kept {
        let cells: Vec<String> = row
            .iter()
            .map(|c| c.map_or("   .".to_string(), |c| format!("{c:4}")))
            .collect();
        println!("  {}", cells.join(""));
    }

    let back = decompress_block(&cb);
    let mut worst = 0.0f64;
    for i in 0..BLOCK {
        for j in 0..BLOCK {
            worst = worst.max((back[(i, j)] - block[(i, j)]).abs());
        }
    }
    print_grid("reconstruction", back.values(), |v| format!("{v:7.3}"));
    println!("max abs error {worst:.4}, {} bytes on disk", cb.to_bytes().len());
    Ok(())
}
