//! Whole-matrix layer: tiling into 8×8 blocks, block-wise dispatch of the
//! compressed operations, and dense reference kernels in [`dense`].
//!
//! Dimensions that are not multiples of 8 are padded by repeating the last
//! row and column; decompression crops the padding away.

pub mod dense;

use rayon::prelude::*;

use crate::codec::{
    compress_block, decompress_block, CompressedBlock, DenseBlock, Grid, BLOCK,
};
use crate::ops;
use crate::{Error, Result};

fn non_finite(values: &[f64], cols: usize) -> Error {
    let p = values.iter().position(|v| !v.is_finite()).unwrap_or(0);
    Error::InvalidInput(format!("non-finite value at ({}, {})", p / cols, p % cols))
}

/// Row-major matrix of finite `f64` values.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(format!("empty matrix {rows}x{cols}")));
        }
        if values.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "{} values for a {rows}x{cols} matrix",
                values.len()
            )));
        }
        // Branch-free scan first so the common all-finite case vectorizes.
        if !values.iter().fold(true, |ok, v| ok & v.is_finite()) {
            return Err(non_finite(&values, cols));
        }
        Ok(DenseMatrix { rows, cols, values })
    }

    /// Applies `f` entrywise, checking finiteness in the same pass.
    pub(crate) fn map_values(&self, other: Option<&DenseMatrix>, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let mut finite = true;
        let values: Vec<f64> = match other {
            Some(o) => self
                .values
                .iter()
                .zip(&o.values)
                .map(|(&x, &y)| {
                    let v = f(x, y);
                    finite &= v.is_finite();
                    v
                })
                .collect(),
            None => self
                .values
                .iter()
                .map(|&x| {
                    let v = f(x, 0.0);
                    finite &= v.is_finite();
                    v
                })
                .collect(),
        };
        if !finite {
            return Err(non_finite(&values, self.cols));
        }
        Ok(DenseMatrix { rows: self.rows, cols: self.cols, values })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                values.push(f(i, j));
            }
        }
        Self::new(rows, cols, values)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Panics when out of range.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.rows && j < self.cols, "({i}, {j}) outside {}x{}", self.rows, self.cols);
        self.values[i * self.cols + j]
    }

    pub(crate) fn check_index(&self, i: usize, j: usize) -> Result<()> {
        if i >= self.rows {
            return Err(Error::IndexOutOfRange { what: "row", index: i, bound: self.rows });
        }
        if j >= self.cols {
            return Err(Error::IndexOutOfRange { what: "column", index: j, bound: self.cols });
        }
        Ok(())
    }

    /// The 8×8 tile at block coordinates `(bi, bj)`, edge-replicated past the
    /// last row and column.
    pub fn tile(&self, bi: usize, bj: usize) -> DenseBlock {
        let last_row = self.rows - 1;
        let last_col = self.cols - 1;
        let mut g = [[0.0; BLOCK]; BLOCK];
        for (r, row) in g.iter_mut().enumerate() {
            let i = (bi * BLOCK + r).min(last_row);
            for (c, v) in row.iter_mut().enumerate() {
                *v = self.values[i * self.cols + (bj * BLOCK + c).min(last_col)];
            }
        }
        DenseBlock::from_grid_unchecked(g)
    }
}

/// Logical dimensions plus a row-major grid of compressed blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct CompressedMatrix {
    rows: usize,
    cols: usize,
    blocks: Vec<CompressedBlock>,
}

pub fn block_count(dim: usize) -> usize {
    dim.div_ceil(BLOCK)
}

impl CompressedMatrix {
    pub fn new(rows: usize, cols: usize, blocks: Vec<CompressedBlock>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(format!("empty matrix {rows}x{cols}")));
        }
        let want = block_count(rows) * block_count(cols);
        if blocks.len() != want {
            return Err(Error::InvalidInput(format!(
                "{} blocks for a {rows}x{cols} matrix (expected {want})",
                blocks.len()
            )));
        }
        Ok(CompressedMatrix { rows, cols, blocks })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn block_rows(&self) -> usize {
        block_count(self.rows)
    }

    pub fn block_cols(&self) -> usize {
        block_count(self.cols)
    }

    pub fn blocks(&self) -> &[CompressedBlock] {
        &self.blocks
    }

    pub fn block(&self, bi: usize, bj: usize) -> &CompressedBlock {
        &self.blocks[bi * self.block_cols() + bj]
    }

    /// Field-wise bitwise equality of dimensions and every block.
    pub fn bitwise_eq(&self, other: &Self) -> bool {
        self.shape() == other.shape()
            && self.blocks.iter().zip(&other.blocks).all(|(a, b)| a.bitwise_eq(b))
    }
}

pub fn compress_matrix(m: &DenseMatrix) -> Result<CompressedMatrix> {
    let bc = block_count(m.cols);
    let blocks = (0..block_count(m.rows) * bc)
        .map(|n| compress_block(&m.tile(n / bc, n % bc)))
        .collect::<Result<_>>()?;
    CompressedMatrix::new(m.rows, m.cols, blocks)
}

/// [`compress_matrix`] with blocks dispatched over the rayon pool. Output is
/// bitwise identical.
pub fn compress_matrix_par(m: &DenseMatrix) -> Result<CompressedMatrix> {
    let bc = block_count(m.cols);
    let blocks = (0..block_count(m.rows) * bc)
        .into_par_iter()
        .map(|n| compress_block(&m.tile(n / bc, n % bc)))
        .collect::<Result<_>>()?;
    CompressedMatrix::new(m.rows, m.cols, blocks)
}

fn assemble(rows: usize, cols: usize, block_cols: usize, tiles: &[Grid]) -> DenseMatrix {
    let mut values = vec![0.0; rows * cols];
    for (i, row) in values.chunks_exact_mut(cols).enumerate() {
        let (bi, r) = (i / BLOCK, i % BLOCK);
        for (j, v) in row.iter_mut().enumerate() {
            *v = tiles[bi * block_cols + j / BLOCK][r][j % BLOCK];
        }
    }
    DenseMatrix { rows, cols, values }
}

pub fn decompress_matrix(cm: &CompressedMatrix) -> DenseMatrix {
    let tiles: Vec<Grid> = cm.blocks.iter().map(|b| *decompress_block(b).values()).collect();
    assemble(cm.rows, cm.cols, cm.block_cols(), &tiles)
}

pub fn decompress_matrix_par(cm: &CompressedMatrix) -> DenseMatrix {
    let tiles: Vec<Grid> = cm.blocks.par_iter().map(|b| *decompress_block(b).values()).collect();
    assemble(cm.rows, cm.cols, cm.block_cols(), &tiles)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementwiseOp {
    Add,
    Sub,
}

pub fn mat_elementwise(
    op: ElementwiseOp,
    a: &CompressedMatrix,
    b: &CompressedMatrix,
) -> Result<CompressedMatrix> {
    let (name, sign) = match op {
        ElementwiseOp::Add => ("add", 1.0),
        ElementwiseOp::Sub => ("sub", -1.0),
    };
    if a.shape() != b.shape() {
        return Err(Error::mismatch(name, a.shape(), b.shape()));
    }
    let blocks = ops::combine_slices(&a.blocks, &b.blocks, sign)?;
    Ok(CompressedMatrix { rows: a.rows, cols: a.cols, blocks })
}

pub fn mat_add(a: &CompressedMatrix, b: &CompressedMatrix) -> Result<CompressedMatrix> {
    mat_elementwise(ElementwiseOp::Add, a, b)
}

pub fn mat_sub(a: &CompressedMatrix, b: &CompressedMatrix) -> Result<CompressedMatrix> {
    mat_elementwise(ElementwiseOp::Sub, a, b)
}

pub fn mat_scale(a: &CompressedMatrix, c: f64) -> Result<CompressedMatrix> {
    let mut blocks = Vec::with_capacity(a.blocks.len());
    for b in &a.blocks {
        blocks.push(ops::scale(b, c)?);
    }
    Ok(CompressedMatrix { rows: a.rows, cols: a.cols, blocks })
}

/// Row `i` of `a` times column `j` of `b`, reconstructing only the block rows
/// and columns involved. Accumulates in ascending global `k`; padding is
/// skipped.
pub fn mat_dot(a: &CompressedMatrix, b: &CompressedMatrix, i: usize, j: usize) -> Result<f64> {
    if a.cols != b.rows {
        return Err(Error::mismatch("dot", a.shape(), b.shape()));
    }
    if i >= a.rows {
        return Err(Error::IndexOutOfRange { what: "row", index: i, bound: a.rows });
    }
    if j >= b.cols {
        return Err(Error::IndexOutOfRange { what: "column", index: j, bound: b.cols });
    }
    let (bi, r) = (i / BLOCK, i % BLOCK);
    let (bj, c) = (j / BLOCK, j % BLOCK);
    let mut acc = 0.0;
    for t in 0..a.block_cols() {
        let rows = ops::reconstruct_rows(a.block(bi, t), r)?;
        let cols = ops::reconstruct_cols(b.block(t, bj), c)?;
        let row = rows.line(r).expect("row materialized");
        let col = cols.line(c).expect("column materialized");
        let depth = (a.cols - t * BLOCK).min(BLOCK);
        for k in 0..depth {
            acc += row[k] * col[k];
        }
    }
    Ok(acc)
}

/// Decompressed operand tiles, computed once per multiply.
struct TileCache {
    tiles: Vec<Grid>,
    block_cols: usize,
}

impl TileCache {
    fn new(m: &CompressedMatrix, parallel: bool) -> Self {
        let tiles = if parallel {
            m.blocks.par_iter().map(|b| *decompress_block(b).values()).collect()
        } else {
            m.blocks.iter().map(|b| *decompress_block(b).values()).collect()
        };
        TileCache { tiles, block_cols: m.block_cols() }
    }

    fn get(&self, bi: usize, bj: usize) -> &Grid {
        &self.tiles[bi * self.block_cols + bj]
    }
}

fn product_tile(a: &TileCache, b: &TileCache, depth_total: usize, bi: usize, bj: usize) -> Grid {
    let mut acc = [[0.0; BLOCK]; BLOCK];
    for t in 0..block_count(depth_total) {
        let depth = (depth_total - t * BLOCK).min(BLOCK);
        ops::mul_accumulate(&mut acc, a.get(bi, t), b.get(t, bj), depth);
    }
    acc
}

fn mul_dense_impl(a: &CompressedMatrix, b: &CompressedMatrix, parallel: bool) -> Result<DenseMatrix> {
    if a.cols != b.rows {
        return Err(Error::mismatch("mul", a.shape(), b.shape()));
    }
    let (ca, cb) = (TileCache::new(a, parallel), TileCache::new(b, parallel));
    let (brows, bcols) = (a.block_rows(), b.block_cols());
    let tile = |n: usize| product_tile(&ca, &cb, a.cols, n / bcols, n % bcols);
    let tiles: Vec<Grid> = if parallel {
        (0..brows * bcols).into_par_iter().map(tile).collect()
    } else {
        (0..brows * bcols).map(tile).collect()
    };
    Ok(assemble(a.rows, b.cols, bcols, &tiles))
}

/// Product of two compressed matrices before recompression. Entry `(i, j)`
/// equals [`mat_dot`]`(a, b, i, j)` bitwise.
pub fn mat_mul_dense(a: &CompressedMatrix, b: &CompressedMatrix) -> Result<DenseMatrix> {
    mul_dense_impl(a, b, false)
}

pub fn mat_mul_dense_par(a: &CompressedMatrix, b: &CompressedMatrix) -> Result<DenseMatrix> {
    mul_dense_impl(a, b, true)
}

/// Product of two compressed matrices, recompressed tile by tile.
pub fn mat_mul(a: &CompressedMatrix, b: &CompressedMatrix) -> Result<CompressedMatrix> {
    compress_matrix(&mat_mul_dense(a, b)?)
}

pub fn mat_mul_par(a: &CompressedMatrix, b: &CompressedMatrix) -> Result<CompressedMatrix> {
    compress_matrix_par(&mat_mul_dense_par(a, b)?)
}
