//! Writes and reads both container formats and imports CSV text.
//!
//! ```text
//! cargo run --example file_formats
//! ```

use compressed_matrix::format::{import_csv, read_compressed, read_dense, write_compressed, write_dense, HEADER_BYTES};
use compressed_matrix::matrix::compress_matrix;

fn main() -> compressed_matrix::Result<()> {
    let csv = "1.0, 2.0, 3.0, 4.0, 5.0\n2.0, 3.5, 5.0, 6.5, 8.0\n3.0, 5.0, 7.0, 9.0, 11.0\n";
    let m = import_csv(csv.as_bytes())?;
    println!("imported {}x{} from CSV", m.rows(), m.cols());

    let mut dense_bytes = Vec::new();
    write_dense(&m, &mut dense_bytes)?;
    let cm = compress_matrix(&m)?;
    let mut packed = Vec::new();
    write_compressed(&cm, &mut packed)?;

    println!("dense file:      {} bytes, header {:02x?}", dense_bytes.len(), &dense_bytes[..HEADER_BYTES]);
    println!(
        "compressed file: {} bytes, {} block(s) of {} bytes after a {HEADER_BYTES}-byte header",
        packed.len(),
        cm.blocks().len(),
        (packed.len() - HEADER_BYTES) / cm.blocks().len()
    );

    assert!(read_dense(&dense_bytes[..])?.values() == m.values());
    assert!(read_compressed(&packed[..])?.bitwise_eq(&cm));
    println!("both files read back bit for bit");

    match read_compressed(&packed[..packed.len() - 1]) {
        Err(e) => println!("truncated file rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
