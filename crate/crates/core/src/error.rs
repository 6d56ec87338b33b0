use std::io;

use thiserror::Error;

/// Errors produced by the codec, the matrix layer and the file formats.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} index {index} out of range (must be < {bound})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("dimension mismatch in {op}: {lhs_rows}x{lhs_cols} vs {rhs_rows}x{rhs_cols}")]
    DimensionMismatch {
        op: &'static str,
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },

    #[error("every reference entry is below the zero threshold")]
    NoValidEntries,

    #[error("bad magic: expected {expected:?}, found {found:?}")]
    BadMagic { expected: [u8; 4], found: [u8; 4] },

    #[error("unsupported format version {0}")]
    UnsupportedVersion(u8),

    #[error("truncated header")]
    TruncatedHeader,

    #[error("truncated payload in block {block}")]
    TruncatedBlock { block: usize },

    #[error("truncated dense payload: expected {expected} bytes, found {found}")]
    TruncatedDense { expected: usize, found: usize },

    #[error("trailing bytes after payload")]
    TrailingBytes,

    #[error("block {block} has scale factor 0")]
    ZeroScaleFactor { block: usize },

    #[error("block {block} holds a non-finite value")]
    NonFiniteBlock { block: usize },

    #[error("CSV row {row}, column {col}: cannot parse {cell:?} as a number")]
    CsvCell { row: usize, col: usize, cell: String },

    #[error("CSV: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn mismatch(op: &'static str, lhs: (usize, usize), rhs: (usize, usize)) -> Self {
        Error::DimensionMismatch {
            op,
            lhs_rows: lhs.0,
            lhs_cols: lhs.1,
            rhs_rows: rhs.0,
            rhs_cols: rhs.1,
        }
    }
}
