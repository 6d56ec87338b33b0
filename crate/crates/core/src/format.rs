//! Binary container formats and CSV import.
//!
//! Both formats share a 13-byte little-endian header:
//!
//! | bytes | field                          |
//! |-------|--------------------------------|
//! | 0..4  | magic, `BLZC` or `BLZD`        |
//! | 4     | version (1)                    |
//! | 5..9  | rows, `u32`                    |
//! | 9..13 | cols, `u32`                    |
//!
//! A compressed file (`.blzc`) follows with one 45-byte record per block in
//! row-major grid order: `f` (`f64`), `s` (`f64`), `phi` (`u8`) and 28 `i8`
//! coefficients in keep-set order. A dense file (`.blzd`) follows with
//! `rows·cols` row-major `f64` values.

use std::io::{Read, Write};

use crate::codec::{CompressedBlock, KEPT, PAYLOAD_BYTES};
use crate::matrix::{block_count, CompressedMatrix, DenseMatrix};
use crate::{Error, Result};

pub const COMPRESSED_MAGIC: [u8; 4] = *b"BLZC";
pub const DENSE_MAGIC: [u8; 4] = *b"BLZD";
pub const VERSION: u8 = 1;
pub const HEADER_BYTES: usize = 13;

impl CompressedBlock {
    pub fn to_bytes(&self) -> [u8; PAYLOAD_BYTES] {
        let mut out = [0u8; PAYLOAD_BYTES];
        out[0..8].copy_from_slice(&self.f().to_le_bytes());
        out[8..16].copy_from_slice(&self.s().to_le_bytes());
        out[16] = self.phi();
        for (o, c) in out[17..].iter_mut().zip(self.coeffs()) {
            *o = *c as u8;
        }
        out
    }

    /// Parses one record; `block` only labels errors.
    pub fn from_bytes(bytes: &[u8; PAYLOAD_BYTES], block: usize) -> Result<Self> {
        let f = f64::from_le_bytes(bytes[0..8].try_into().unwrap());
        let s = f64::from_le_bytes(bytes[8..16].try_into().unwrap());
        let phi = bytes[16];
        if phi == 0 {
            return Err(Error::ZeroScaleFactor { block });
        }
        if !f.is_finite() || !s.is_finite() {
            return Err(Error::NonFiniteBlock { block });
        }
        let mut coeffs = [0i8; KEPT];
        for (c, b) in coeffs.iter_mut().zip(&bytes[17..]) {
            *c = *b as i8;
        }
        CompressedBlock::new(f, s, phi, coeffs)
    }
}

fn header(magic: [u8; 4], rows: usize, cols: usize) -> Result<[u8; HEADER_BYTES]> {
    let dim = |d: usize| {
        u32::try_from(d).map_err(|_| Error::InvalidInput(format!("dimension {d} exceeds u32")))
    };
    let mut h = [0u8; HEADER_BYTES];
    h[0..4].copy_from_slice(&magic);
    h[4] = VERSION;
    h[5..9].copy_from_slice(&dim(rows)?.to_le_bytes());
    h[9..13].copy_from_slice(&dim(cols)?.to_le_bytes());
    Ok(h)
}

fn parse_header(bytes: &[u8], magic: [u8; 4]) -> Result<(usize, usize)> {
    if bytes.len() < 4 {
        return Err(Error::TruncatedHeader);
    }
    let found: [u8; 4] = bytes[0..4].try_into().unwrap();
    if found != magic {
        return Err(Error::BadMagic { expected: magic, found });
    }
    if bytes.len() < HEADER_BYTES {
        return Err(Error::TruncatedHeader);
    }
    if bytes[4] != VERSION {
        return Err(Error::UnsupportedVersion(bytes[4]));
    }
    let rows = u32::from_le_bytes(bytes[5..9].try_into().unwrap()) as usize;
    let cols = u32::from_le_bytes(bytes[9..13].try_into().unwrap()) as usize;
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidInput(format!("empty matrix {rows}x{cols} in header")));
    }
    Ok((rows, cols))
}

/// Writes a `.blzc` stream and returns the number of bytes written.
pub fn write_compressed(cm: &CompressedMatrix, mut sink: impl Write) -> Result<usize> {
    sink.write_all(&header(COMPRESSED_MAGIC, cm.rows(), cm.cols())?)?;
    for b in cm.blocks() {
        sink.write_all(&b.to_bytes())?;
    }
    sink.flush()?;
    Ok(HEADER_BYTES + cm.blocks().len() * PAYLOAD_BYTES)
}

pub fn read_compressed(mut source: impl Read) -> Result<CompressedMatrix> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    let (rows, cols) = parse_header(&bytes, COMPRESSED_MAGIC)?;
    let count = block_count(rows) * block_count(cols);
    let payload = &bytes[HEADER_BYTES..];
    let mut blocks = Vec::with_capacity(count.min(payload.len() / PAYLOAD_BYTES + 1));
    for n in 0..count {
        let record = payload
            .get(n * PAYLOAD_BYTES..(n + 1) * PAYLOAD_BYTES)
            .ok_or(Error::TruncatedBlock { block: n })?;
        blocks.push(CompressedBlock::from_bytes(record.try_into().unwrap(), n)?);
    }
    if payload.len() != count * PAYLOAD_BYTES {
        return Err(Error::TrailingBytes);
    }
    CompressedMatrix::new(rows, cols, blocks)
}

/// Writes a `.blzd` stream and returns the number of bytes written.
pub fn write_dense(m: &DenseMatrix, mut sink: impl Write) -> Result<usize> {
    sink.write_all(&header(DENSE_MAGIC, m.rows(), m.cols())?)?;
    let mut buf = Vec::with_capacity(m.values().len() * 8);
    for v in m.values() {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    sink.write_all(&buf)?;
    sink.flush()?;
    Ok(HEADER_BYTES + buf.len())
}

pub fn read_dense(mut source: impl Read) -> Result<DenseMatrix> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    let (rows, cols) = parse_header(&bytes, DENSE_MAGIC)?;
    let payload = &bytes[HEADER_BYTES..];
    let expected = rows
        .checked_mul(cols)
        .and_then(|n| n.checked_mul(8))
        .ok_or_else(|| Error::InvalidInput(format!("{rows}x{cols} matrix is too large")))?;
    match payload.len().cmp(&expected) {
        std::cmp::Ordering::Less => {
            return Err(Error::TruncatedDense { expected, found: payload.len() })
        }
        std::cmp::Ordering::Greater => return Err(Error::TrailingBytes),
        std::cmp::Ordering::Equal => {}
    }
    let values = payload
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    DenseMatrix::new(rows, cols, values)
}

/// Parses comma-separated decimal rows, one matrix row per line.
pub fn import_csv(source: impl Read) -> Result<DenseMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(source);
    let mut values = Vec::new();
    let mut rows = 0;
    let mut cols = 0;
    for record in reader.records() {
        let record = record?;
        for (col, cell) in record.iter().enumerate() {
            let v: f64 = cell.parse().map_err(|_| Error::CsvCell {
                row: rows,
                col,
                cell: cell.to_string(),
            })?;
            values.push(v);
        }
        cols = record.len();
        rows += 1;
    }
    DenseMatrix::new(rows, cols, values)
}
