//! Uncompressed reference kernels.

use super::DenseMatrix;
use crate::{Error, Result};

fn same_shape(op: &'static str, a: &DenseMatrix, b: &DenseMatrix) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::mismatch(op, a.shape(), b.shape()));
    }
    Ok(())
}

pub fn add(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    same_shape("add", a, b)?;
    a.map_values(Some(b), |x, y| x + y)
}

pub fn sub(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    same_shape("sub", a, b)?;
    a.map_values(Some(b), |x, y| x - y)
}

pub fn scale(a: &DenseMatrix, c: f64) -> Result<DenseMatrix> {
    a.map_values(None, |x, _| x * c)
}

/// Row `i` of `a` times column `j` of `b`, ascending `k`.
pub fn dot(a: &DenseMatrix, b: &DenseMatrix, i: usize, j: usize) -> Result<f64> {
    if a.cols() != b.rows() {
        return Err(Error::mismatch("dot", a.shape(), b.shape()));
    }
    a.check_index(i, 0)?;
    b.check_index(0, j)?;
    let row = &a.values()[i * a.cols()..(i + 1) * a.cols()];
    let mut r = 0.0;
    for (k, x) in row.iter().enumerate() {
        r += x * b.values()[k * b.cols() + j];
    }
    Ok(r)
}

/// Product in i-k-j order; each entry accumulates in ascending `k`.
pub fn mul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    if a.cols() != b.rows() {
        return Err(Error::mismatch("mul", a.shape(), b.shape()));
    }
    let (n, m, p) = (a.rows(), a.cols(), b.cols());
    let mut out = vec![0.0; n * p];
    for i in 0..n {
        let out_row = &mut out[i * p..(i + 1) * p];
        for k in 0..m {
            let aik = a.values()[i * m + k];
            let b_row = &b.values()[k * p..(k + 1) * p];
            for (o, bkj) in out_row.iter_mut().zip(b_row) {
                *o += aik * bkj;
            }
        }
    }
    DenseMatrix::new(n, p, out)
}
