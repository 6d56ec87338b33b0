//! Neighbour-difference normalization and its exact inverse.

use super::{DenseBlock, Grid, BLOCK};
use crate::{Error, Result};

/// Differences of each entry against its preceding neighbours.
///
/// `deltas[0][0]` is always exactly zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaBlock(Grid);

impl DeltaBlock {
    pub fn new(deltas: Grid) -> Result<Self> {
        if deltas[0][0] != 0.0 {
            return Err(Error::InvalidInput("delta block must have a zero origin".into()));
        }
        if deltas.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("delta block holds a non-finite value".into()));
        }
        Ok(DeltaBlock(deltas))
    }

    pub fn zero() -> Self {
        DeltaBlock([[0.0; BLOCK]; BLOCK])
    }

    pub fn values(&self) -> &Grid {
        &self.0
    }
}

/// Deltas divided by the mean slope: dimensionless slopes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalizedBlock(Grid);

impl NormalizedBlock {
    pub fn values(&self) -> &Grid {
        &self.0
    }

    /// Wraps an arbitrary slope grid. The origin must be zero.
    pub fn new(slopes: Grid) -> Result<Self> {
        DeltaBlock::new(slopes).map(|d| NormalizedBlock(d.0))
    }
}

/// Splits a block into its first element and the neighbour differences.
///
/// Row 0 and column 0 use one-sided differences, interior entries the mean of
/// the vertical and horizontal differences.
pub fn normalize(block: &DenseBlock) -> Result<(f64, DeltaBlock)> {
    let m = block.values();
    let mut d = [[0.0; BLOCK]; BLOCK];
    for j in 1..BLOCK {
        d[0][j] = m[0][j] - m[0][j - 1];
    }
    for i in 1..BLOCK {
        d[i][0] = m[i][0] - m[i - 1][0];
        for j in 1..BLOCK {
            d[i][j] = ((m[i][j] - m[i - 1][j]) + (m[i][j] - m[i][j - 1])) / 2.0;
        }
    }
    if d.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("neighbour differences overflow binary64".into()));
    }
    Ok((m[0][0], DeltaBlock(d)))
}

/// Inverse of [`normalize`].
pub fn denormalize(f: f64, deltas: &DeltaBlock) -> DenseBlock {
    DenseBlock::from_grid_unchecked(integrate_rows(f, &deltas.0, BLOCK))
}

/// Mean absolute delta over the nonzero entries; zero when every delta is zero.
pub fn mean_slope(deltas: &DeltaBlock) -> f64 {
    let (sum, count) = deltas
        .0
        .iter()
        .flatten()
        .filter(|v| **v != 0.0)
        .fold((0.0, 0usize), |(sum, count), v| (sum + v.abs(), count + 1));
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}

/// Divides every delta by the mean slope `s`.
pub fn divide_by_slope(deltas: &DeltaBlock, s: f64) -> Result<NormalizedBlock> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Precondition(format!("mean slope must be positive, got {s}")));
    }
    let mut out = [[0.0; BLOCK]; BLOCK];
    for (o, d) in out.iter_mut().flatten().zip(deltas.0.iter().flatten()) {
        *o = d / s;
    }
    if out.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("normalized slopes overflow binary64".into()));
    }
    Ok(NormalizedBlock(out))
}

#[inline]
fn step(up: f64, left: f64, residual: f64) -> f64 {
    (up + left) / 2.0 + residual
}

/// Rebuilds rows `0..rows` from the first element and a residual grid.
///
/// Every reconstruction path (full decompression, partial rows, partial
/// columns) goes through the same per-entry expression so that results agree
/// bitwise.
pub(crate) fn integrate_rows(f: f64, residual: &Grid, rows: usize) -> Grid {
    let mut b = [[0.0; BLOCK]; BLOCK];
    b[0][0] = f;
    for j in 1..BLOCK {
        b[0][j] = b[0][j - 1] + residual[0][j];
    }
    for i in 1..rows {
        b[i][0] = b[i - 1][0] + residual[i][0];
        for j in 1..BLOCK {
            b[i][j] = step(b[i - 1][j], b[i][j - 1], residual[i][j]);
        }
    }
    b
}

/// Rebuilds columns `0..cols` of every row. Entries outside are left at zero.
pub(crate) fn integrate_cols(f: f64, residual: &Grid, cols: usize) -> Grid {
    let mut b = [[0.0; BLOCK]; BLOCK];
    b[0][0] = f;
    for j in 1..cols {
        b[0][j] = b[0][j - 1] + residual[0][j];
    }
    for i in 1..BLOCK {
        b[i][0] = b[i - 1][0] + residual[i][0];
        for j in 1..cols {
            b[i][j] = step(b[i - 1][j], b[i][j - 1], residual[i][j]);
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ramp_rows() -> DenseBlock {
        DenseBlock::from_fn(|_, j| j as f64).unwrap()
    }

    #[test]
    fn constant_block_has_zero_deltas() {
        let (f, d) = normalize(&DenseBlock::constant(5.0).unwrap()).unwrap();
        assert_eq!(f, 5.0);
        assert_eq!(d, DeltaBlock::zero());
        assert_eq!(mean_slope(&d), 0.0);
    }

    #[test]
    fn copied_ramp_rows() {
        let (f, d) = normalize(&ramp_rows()).unwrap();
        assert_eq!(f, 0.0);
        let d = d.values();
        for j in 1..BLOCK {
            assert_eq!(d[0][j], 1.0);
        }
        for i in 1..BLOCK {
            assert_eq!(d[i][0], 0.0);
            for j in 1..BLOCK {
                assert_eq!(d[i][j], 0.5);
            }
        }
    }

    #[test]
    fn denormalize_of_zero_deltas_is_constant() {
        let b = denormalize(-3.25, &DeltaBlock::zero());
        assert!(b.values().iter().flatten().all(|v| *v == -3.25));
    }

    #[test]
    fn mean_slope_single_entry() {
        let mut g = [[0.0; BLOCK]; BLOCK];
        g[3][4] = -0.5;
        assert_eq!(mean_slope(&DeltaBlock::new(g).unwrap()), 0.5);
    }

    #[test]
    fn delta_block_rejects_nonzero_origin() {
        let mut g = [[0.0; BLOCK]; BLOCK];
        g[0][0] = 1.0;
        assert!(DeltaBlock::new(g).is_err());
    }

    #[test]
    fn divide_requires_positive_slope() {
        assert!(matches!(
            divide_by_slope(&DeltaBlock::zero(), 0.0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn overflowing_differences_are_rejected() {
        let b = DenseBlock::from_fn(|i, _| if i % 2 == 0 { f64::MAX } else { -f64::MAX }).unwrap();
        assert!(matches!(normalize(&b), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn partial_integration_matches_full() {
        let (f, d) = normalize(&DenseBlock::from_fn(|i, j| (i * j) as f64 * 0.3 - j as f64).unwrap())
            .unwrap();
        let full = integrate_rows(f, d.values(), BLOCK);
        for n in 1..=BLOCK {
            let rows = integrate_rows(f, d.values(), n);
            let cols = integrate_cols(f, d.values(), n);
            for i in 0..BLOCK {
                for j in 0..BLOCK {
                    if i < n {
                        assert_eq!(rows[i][j].to_bits(), full[i][j].to_bits());
                    }
                    if j < n {
                        assert_eq!(cols[i][j].to_bits(), full[i][j].to_bits());
                    }
                }
            }
        }
    }
}
