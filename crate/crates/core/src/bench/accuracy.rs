use std::io::Write;

use rayon::prelude::*;

use super::TestFunction;
use crate::matrix::{self, dense, CompressedMatrix, DenseMatrix};
use crate::{Error, Result};

/// Reference entries smaller than this in magnitude are excluded from the
/// mean relative error.
pub const ZERO_THRESHOLD: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelativeError {
    pub mean: f64,
    pub excluded: usize,
}

/// Mean of `|(candidate − reference) / reference|` over entries with
/// `|reference| >= ZERO_THRESHOLD`.
pub fn mean_relative_error(reference: &DenseMatrix, candidate: &DenseMatrix) -> Result<RelativeError> {
    if reference.shape() != candidate.shape() {
        return Err(Error::mismatch("mean_relative_error", reference.shape(), candidate.shape()));
    }
    let mut sum = 0.0;
    let mut counted = 0usize;
    for (r, c) in reference.values().iter().zip(candidate.values()) {
        if r.abs() < ZERO_THRESHOLD {
            continue;
        }
        sum += ((c - r) / r).abs();
        counted += 1;
    }
    if counted == 0 {
        return Err(Error::NoValidEntries);
    }
    Ok(RelativeError {
        mean: sum / counted as f64,
        excluded: reference.values().len() - counted,
    })
}

/// One row of the accuracy table.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorReport {
    pub op: &'static str,
    pub lhs: String,
    /// Second operand label, the scalar for scaling, empty for round trips.
    pub rhs: String,
    pub n: usize,
    pub error: f64,
    pub excluded: usize,
}

#[derive(Clone, Copy, Debug)]
enum Cell {
    RoundTrip(usize),
    Add(usize, usize),
    Scale(usize, f64),
    Mul(usize, usize),
}

/// Scalar used for the scaling rows.
pub const SUITE_SCALAR: f64 = 2.0;

/// Round trips for M1..M6, the 15 pairwise additions, scaling by 2 and the 36
/// products. Products are measured before recompression.
pub fn accuracy_suite(n: usize) -> Result<Vec<ErrorReport>> {
    let funcs = TestFunction::ALL;
    let dense: Vec<DenseMatrix> = funcs.iter().map(|f| f.grid(n)).collect::<Result<_>>()?;
    let compressed: Vec<CompressedMatrix> =
        dense.par_iter().map(matrix::compress_matrix).collect::<Result<_>>()?;

    let mut cells = Vec::new();
    cells.extend((0..6).map(Cell::RoundTrip));
    for i in 0..6 {
        for j in i + 1..6 {
            cells.push(Cell::Add(i, j));
        }
    }
    cells.extend((0..6).map(|i| Cell::Scale(i, SUITE_SCALAR)));
    for i in 0..6 {
        for j in 0..6 {
            cells.push(Cell::Mul(i, j));
        }
    }

    let label = |k: usize| funcs[k].matrix_label();
    cells
        .par_iter()
        .map(|cell| {
            let (op, lhs, rhs, reference, candidate) = match *cell {
                Cell::RoundTrip(k) => (
                    "roundtrip",
                    label(k),
                    String::new(),
                    dense[k].clone(),
                    matrix::decompress_matrix(&compressed[k]),
                ),
                Cell::Add(i, j) => (
                    "add",
                    label(i),
                    label(j),
                    dense::add(&dense[i], &dense[j])?,
                    matrix::decompress_matrix(&matrix::mat_add(&compressed[i], &compressed[j])?),
                ),
                Cell::Scale(k, c) => (
                    "scale",
                    label(k),
                    format!("{c}"),
                    dense::scale(&dense[k], c)?,
                    matrix::decompress_matrix(&matrix::mat_scale(&compressed[k], c)?),
                ),
                Cell::Mul(i, j) => (
                    "mul",
                    label(i),
                    label(j),
                    dense::mul(&dense[i], &dense[j])?,
                    matrix::mat_mul_dense(&compressed[i], &compressed[j])?,
                ),
            };
            // A product can vanish identically on the symmetric grid; report NaN.
            let e = match mean_relative_error(&reference, &candidate) {
                Err(Error::NoValidEntries) => RelativeError {
                    mean: f64::NAN,
                    excluded: reference.values().len(),
                },
                other => other?,
            };
            Ok(ErrorReport { op, lhs, rhs, n, error: e.mean, excluded: e.excluded })
        })
        .collect()
}

/// CSV with header `op,lhs,rhs,n,error,excluded`.
pub fn write_accuracy_csv(reports: &[ErrorReport], sink: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["op", "lhs", "rhs", "n", "error", "excluded"])?;
    for r in reports {
        w.write_record([
            r.op.to_string(),
            r.lhs.clone(),
            r.rhs.clone(),
            r.n.to_string(),
            format!("{:e}", r.error),
            r.excluded.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn filled(v: f64) -> DenseMatrix {
        DenseMatrix::new(3, 3, vec![v; 9]).unwrap()
    }

    #[test]
    fn identical_is_zero() {
        let m = TestFunction::F5.grid(9).unwrap();
        assert_eq!(mean_relative_error(&m, &m).unwrap().mean, 0.0);
    }

    #[test]
    fn one_percent() {
        let e = mean_relative_error(&filled(2.0), &filled(2.02)).unwrap();
        assert!((e.mean - 0.01).abs() < 1e-12);
        assert_eq!(e.excluded, 0);
    }

    #[test]
    fn zeros_are_excluded_and_counted() {
        let r = DenseMatrix::new(1, 3, vec![0.0, 1.0, 1e-13]).unwrap();
        let c = DenseMatrix::new(1, 3, vec![5.0, 1.5, 1.0]).unwrap();
        let e = mean_relative_error(&r, &c).unwrap();
        assert_eq!(e.excluded, 2);
        assert_eq!(e.mean, 0.5);
        assert!(matches!(
            mean_relative_error(&filled(0.0), &filled(1.0)),
            Err(Error::NoValidEntries)
        ));
    }

    #[test]
    fn csv_shape() {
        let reports = accuracy_suite(16).unwrap();
        assert_eq!(reports.len(), 63);
        let mut out = Vec::new();
        write_accuracy_csv(&reports, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("op,lhs,rhs,n,error,excluded\n"));
        assert_eq!(text.lines().count(), 64);
    }
}
