//! Command-line front end used by the `cmat` binary.
//!
//! Exit codes: 0 success, 1 usage error, 2 I/O or format error, 3 dimension
//! or argument error.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::bench::{self, BenchOp, TestFunction};
use crate::codec::{COMPRESSION_RATE, PAYLOAD_BYTES};
use crate::format::{self, HEADER_BYTES};
use crate::matrix::{self, CompressedMatrix, DenseMatrix};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "cmat", version, about = "Fixed-rate compressed matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct Output {
    /// Output file.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Overwrite the output file if it exists.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a test function on an n×n grid over [-2, 2]² into a .blzd file.
    Gen {
        function: TestFunction,
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Convert a CSV file of decimal rows into a .blzd file.
    Import {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Compress a .blzd file into a .blzc file.
    Compress {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Decompress a .blzc file into a .blzd file.
    Decompress {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Print dimensions, block grid and rate of a .blzc file.
    Info { input: PathBuf },
    /// Add two compressed matrices.
    Add {
        lhs: PathBuf,
        rhs: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Subtract two compressed matrices.
    Sub {
        lhs: PathBuf,
        rhs: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Multiply a compressed matrix by a constant.
    Scale {
        input: PathBuf,
        #[arg(allow_negative_numbers = true)]
        constant: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Print the dot product of row I of LHS and column J of RHS (zero-based).
    Dot {
        lhs: PathBuf,
        rhs: PathBuf,
        i: usize,
        j: usize,
    },
    /// Multiply two compressed matrices.
    Matmul {
        lhs: PathBuf,
        rhs: PathBuf,
        #[arg(long)]
        parallel: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Write the accuracy table as CSV.
    Accuracy {
        #[arg(short, long, default_value_t = 512)]
        n: usize,
        /// CSV destination; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Write timing measurements as CSV.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [80, 400, 1000, 2000])]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = BenchOp::ALL)]
        ops: Vec<BenchOp>,
        #[arg(long, default_value_t = bench::MIN_REPEATS)]
        repeats: usize,
        /// Also time the parallel block dispatch.
        #[arg(long)]
        parallel: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
}

/// Exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_)
        | Error::BadMagic { .. }
        | Error::UnsupportedVersion(_)
        | Error::TruncatedHeader
        | Error::TruncatedBlock { .. }
        | Error::TruncatedDense { .. }
        | Error::TrailingBytes
        | Error::ZeroScaleFactor { .. }
        | Error::NonFiniteBlock { .. }
        | Error::CsvCell { .. }
        | Error::Csv(_) => 2,
        Error::InvalidInput(_)
        | Error::Precondition(_)
        | Error::IndexOutOfRange { .. }
        | Error::DimensionMismatch { .. }
        | Error::NoValidEntries => 3,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn load_dense(path: &Path) -> Result<DenseMatrix> {
    format::read_dense(open(path)?)
}

fn load_compressed(path: &Path) -> Result<CompressedMatrix> {
    format::read_compressed(open(path)?)
}

/// Writes through a temporary file in the destination directory and renames
/// it into place only on success.
fn write_atomic(path: &Path, force: bool, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    if path.exists() && !force {
        return Err(Error::InvalidInput(format!(
            "{} exists (pass --force to overwrite)",
            path.display()
        )));
    }
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut builder = tempfile::Builder::new();
    // Temporary files default to owner-only access; outputs should follow the umask.
    #[cfg(unix)]
    builder.permissions(std::os::unix::fs::PermissionsExt::from_mode(0o666));
    let mut tmp = builder.tempfile_in(dir)?;
    {
        let mut w = BufWriter::new(tmp.as_file_mut());
        body(&mut w)?;
        w.flush()?;
    }
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn save_dense(out: &Output, m: &DenseMatrix) -> Result<()> {
    write_atomic(&out.output, out.force, |w| format::write_dense(m, w).map(drop))
}

fn save_compressed(out: &Output, m: &CompressedMatrix) -> Result<()> {
    write_atomic(&out.output, out.force, |w| format::write_compressed(m, w).map(drop))
}

fn emit(output: Option<&Path>, force: bool, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match output {
        Some(path) => write_atomic(path, force, body),
        None => body(&mut io::stdout().lock()),
    }
}

pub fn execute(command: Command) -> Result<()> {
    match command {
        Command::Gen { function, n, out } => save_dense(&out, &bench::gen_matrix(function, n)?),
        Command::Import { input, out } => save_dense(&out, &format::import_csv(open(&input)?)?),
        Command::Compress { input, out } => {
            save_compressed(&out, &matrix::compress_matrix(&load_dense(&input)?)?)
        }
        Command::Decompress { input, out } => {
            save_dense(&out, &matrix::decompress_matrix(&load_compressed(&input)?))
        }
        Command::Info { input } => {
            let m = load_compressed(&input)?;
            let blocks = m.blocks().len();
            let file_bytes = HEADER_BYTES + blocks * PAYLOAD_BYTES;
            println!("dimensions: {}x{}", m.rows(), m.cols());
            println!("block grid: {}x{} ({blocks} blocks)", m.block_rows(), m.block_cols());
            println!("bytes per block: {PAYLOAD_BYTES}");
            println!("compression rate: {COMPRESSION_RATE:.4}");
            println!(
                "file: {file_bytes} bytes for {} dense bytes",
                m.rows() * m.cols() * 8
            );
            Ok(())
        }
        Command::Add { lhs, rhs, out } => save_compressed(
            &out,
            &matrix::mat_add(&load_compressed(&lhs)?, &load_compressed(&rhs)?)?,
        ),
        Command::Sub { lhs, rhs, out } => save_compressed(
            &out,
            &matrix::mat_sub(&load_compressed(&lhs)?, &load_compressed(&rhs)?)?,
        ),
        Command::Scale { input, constant, out } => {
            save_compressed(&out, &matrix::mat_scale(&load_compressed(&input)?, constant)?)
        }
        Command::Dot { lhs, rhs, i, j } => {
            let v = matrix::mat_dot(&load_compressed(&lhs)?, &load_compressed(&rhs)?, i, j)?;
            println!("{v:e}");
            Ok(())
        }
        Command::Matmul { lhs, rhs, parallel, out } => {
            let (a, b) = (load_compressed(&lhs)?, load_compressed(&rhs)?);
            let product = if parallel { matrix::mat_mul_par(&a, &b)? } else { matrix::mat_mul(&a, &b)? };
            save_compressed(&out, &product)
        }
        Command::Accuracy { n, output, force } => {
            let reports = bench::accuracy_suite(n)?;
            emit(output.as_deref(), force, |w| bench::write_accuracy_csv(&reports, w))
        }
        Command::Bench { sizes, ops, repeats, parallel, output, force } => {
            let records = bench::bench_suite(&sizes, &ops, repeats, parallel)?;
            emit(output.as_deref(), force, |w| bench::write_bench_csv(&records, w))
        }
    }
}
