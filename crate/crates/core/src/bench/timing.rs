use std::fmt;
use std::hint::black_box;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use super::TestFunction;
use crate::matrix::{self, dense};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BenchOp {
    Add,
    Scale,
    Dot,
    MatMul,
    Compress,
    Decompress,
}

impl BenchOp {
    pub const ALL: [BenchOp; 6] = [
        Self::Add,
        Self::Scale,
        Self::Dot,
        Self::MatMul,
        Self::Compress,
        Self::Decompress,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Add => "add",
            Self::Scale => "scale",
            Self::Dot => "dot",
            Self::MatMul => "matmul",
            Self::Compress => "compress",
            Self::Decompress => "decompress",
        }
    }

    /// Codec-only operations have no dense counterpart.
    fn has_dense(self) -> bool {
        !matches!(self, Self::Compress | Self::Decompress)
    }

    fn has_parallel(self) -> bool {
        matches!(self, Self::MatMul | Self::Compress | Self::Decompress)
    }
}

impl fmt::Display for BenchOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown benchmark operation {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Compressed,
    CompressedParallel,
    Dense,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Self::Compressed => "compressed",
            Self::CompressedParallel => "compressed-parallel",
            Self::Dense => "dense",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub op: BenchOp,
    pub n: usize,
    pub variant: Variant,
    /// Median wall time in seconds.
    pub seconds: f64,
    pub repeats: usize,
}

pub const MIN_REPEATS: usize = 5;

fn median(mut samples: Vec<Duration>) -> f64 {
    samples.sort();
    let mid = samples.len() / 2;
    let secs = if samples.len() % 2 == 1 {
        samples[mid].as_secs_f64()
    } else {
        (samples[mid - 1].as_secs_f64() + samples[mid].as_secs_f64()) / 2.0
    };
    // Instant has nanosecond resolution; keep records strictly positive.
    secs.max(1e-9)
}

/// One warm-up call, then the median of `repeats` timed calls.
fn time<T>(repeats: usize, mut f: impl FnMut() -> Result<T>) -> Result<f64> {
    black_box(f()?);
    let mut samples = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let start = Instant::now();
        let out = f()?;
        samples.push(start.elapsed());
        black_box(out);
    }
    Ok(median(samples))
}

/// Times each operation at each size on `f1`/`f2` grids.
///
/// Dense and compressed variants run sequentially; with `parallel` set, the
/// operations that have a parallel implementation get an extra
/// `compressed-parallel` record.
pub fn bench_suite(
    sizes: &[usize],
    ops: &[BenchOp],
    repeats: usize,
    parallel: bool,
) -> Result<Vec<BenchRecord>> {
    if repeats < MIN_REPEATS {
        return Err(Error::InvalidInput(format!(
            "at least {MIN_REPEATS} repeats are required, got {repeats}"
        )));
    }
    let mut out = Vec::new();
    for &n in sizes {
        let a = TestFunction::F1.grid(n)?;
        let b = TestFunction::F2.grid(n)?;
        let ca = matrix::compress_matrix(&a)?;
        let cb = matrix::compress_matrix(&b)?;
        let (i, j) = (n / 2, n / 2);
        for &op in ops {
            let mut record = |variant: Variant, seconds: f64| {
                out.push(BenchRecord { op, n, variant, seconds, repeats });
            };
            let compressed = match op {
                BenchOp::Add => time(repeats, || matrix::mat_add(&ca, &cb))?,
                BenchOp::Scale => time(repeats, || matrix::mat_scale(&ca, 2.0))?,
                BenchOp::Dot => time(repeats, || matrix::mat_dot(&ca, &cb, i, j))?,
                BenchOp::MatMul => time(repeats, || matrix::mat_mul(&ca, &cb))?,
                BenchOp::Compress => time(repeats, || matrix::compress_matrix(&a))?,
                BenchOp::Decompress => time(repeats, || Ok(matrix::decompress_matrix(&ca)))?,
            };
            record(Variant::Compressed, compressed);
            if parallel && op.has_parallel() {
                let secs = match op {
                    BenchOp::MatMul => time(repeats, || matrix::mat_mul_par(&ca, &cb))?,
                    BenchOp::Compress => time(repeats, || matrix::compress_matrix_par(&a))?,
                    _ => time(repeats, || Ok(matrix::decompress_matrix_par(&ca)))?,
                };
                record(Variant::CompressedParallel, secs);
            }
            if op.has_dense() {
                let secs = match op {
                    BenchOp::Add => time(repeats, || dense::add(&a, &b))?,
                    BenchOp::Scale => time(repeats, || dense::scale(&a, 2.0))?,
                    BenchOp::Dot => time(repeats, || dense::dot(&a, &b, i, j))?,
                    _ => time(repeats, || dense::mul(&a, &b))?,
                };
                record(Variant::Dense, secs);
            }
        }
    }
    Ok(out)
}

/// CSV with header `op,n,variant,seconds`.
pub fn write_bench_csv(records: &[BenchRecord], sink: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["op", "n", "variant", "seconds"])?;
    for r in records {
        w.write_record([
            r.op.name().to_string(),
            r.n.to_string(),
            r.variant.name().to_string(),
            format!("{:e}", r.seconds),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_of_odd_and_even() {
        let d = |ms| Duration::from_millis(ms);
        assert_eq!(median(vec![d(5), d(1), d(3)]), 0.003);
        assert_eq!(median(vec![d(4), d(1), d(3), d(2)]), 0.0025);
    }

    #[test]
    fn too_few_repeats() {
        assert!(bench_suite(&[16], &[BenchOp::Add], 4, false).is_err());
    }

    #[test]
    fn small_run_emits_all_variants() {
        let records = bench_suite(&[16], &BenchOp::ALL, 5, true).unwrap();
        // 4 ops with dense counterparts, 3 with parallel ones, 6 compressed.
        assert_eq!(records.len(), 6 + 4 + 3);
        assert!(records.iter().all(|r| r.seconds > 0.0 && r.repeats == 5));
        let mut out = Vec::new();
        write_bench_csv(&records, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("op,n,variant,seconds\n"));
    }

    #[test]
    fn op_names_parse() {
        for op in BenchOp::ALL {
            assert_eq!(op.name().parse::<BenchOp>().unwrap(), op);
        }
    }
}
