//! Arithmetic on compressed blocks.
//!
//! Addition, subtraction and scaling never leave the compressed domain.
//! Dot products and block products reconstruct only the rows and columns
//! they need.

use crate::codec::{
    compress_block, decompress_block, integrate_cols, integrate_rows, residuals, round_coeff,
    CompressedBlock, DenseBlock, Grid, BLOCK, KEPT,
};
use crate::{Error, Result};

/// Adds two compressed blocks.
///
/// Coefficients are merged in the transform domain: each operand's
/// coefficients are weighted by its share of the summed slope and rescaled to
/// the merged scale factor `floor(phi1·phi2 / (phi1 + phi2))`.
pub fn add(b1: &CompressedBlock, b2: &CompressedBlock) -> Result<CompressedBlock> {
    combine(b1, b2, 1.0)
}

/// Subtracts `b2` from `b1`. Same merge rule as [`add`] with `b2`'s weight negated.
pub fn sub(b1: &CompressedBlock, b2: &CompressedBlock) -> Result<CompressedBlock> {
    combine(b1, b2, -1.0)
}

type Merge = fn(f64, &[i8; KEPT], f64, &[i8; KEPT]) -> [i8; KEPT];

fn combine(b1: &CompressedBlock, b2: &CompressedBlock, sign: f64) -> Result<CompressedBlock> {
    combine_with(b1, b2, sign, merge)
}

#[inline(always)]
fn combine_with(b1: &CompressedBlock, b2: &CompressedBlock, sign: f64, merge: Merge) -> Result<CompressedBlock> {
    let f = if sign > 0.0 { b1.f() + b2.f() } else { b1.f() - b2.f() };
    match (b1.is_constant(), b2.is_constant()) {
        (true, true) => return CompressedBlock::constant(f),
        (false, true) => return CompressedBlock::with_checked_header(f, b1.s(), b1.phi(), *b1.coeffs()),
        (true, false) => {
            return CompressedBlock::with_checked_header(f, sign * b2.s(), b2.phi(), *b2.coeffs())
        }
        (false, false) => {}
    }

    let s = b1.s() + b2.s();
    if s == 0.0 {
        return combine_dense(b1, b2, sign);
    }
    let (p1, p2) = (u32::from(b1.phi()), u32::from(b2.phi()));
    let phi = ((p1 * p2) / (p1 + p2)).clamp(1, 255) as u8;
    let alpha1 = b1.s() / s;
    let alpha2 = sign * (b2.s() / s);
    let beta1 = alpha1 / f64::from(b1.phi()) * f64::from(phi);
    let beta2 = alpha2 / f64::from(b2.phi()) * f64::from(phi);
    let coeffs = merge(beta1, b1.coeffs(), beta2, b2.coeffs());
    CompressedBlock::with_checked_header(f, s, phi, coeffs)
}

#[inline(always)]
fn merge_kernel(beta1: f64, c1: &[i8; KEPT], beta2: f64, c2: &[i8; KEPT]) -> [i8; KEPT] {
    let mut out = [0i8; KEPT];
    for k in 0..KEPT {
        out[k] = round_coeff(beta1 * f64::from(c1[k]) + beta2 * f64::from(c2[k]));
    }
    out
}

// The AVX2 variants run the same arithmetic on wider vectors. There is no
// FMA, so results match the baseline bitwise.
#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
fn merge_avx2(beta1: f64, c1: &[i8; KEPT], beta2: f64, c2: &[i8; KEPT]) -> [i8; KEPT] {
    merge_kernel(beta1, c1, beta2, c2)
}

fn merge(beta1: f64, c1: &[i8; KEPT], beta2: f64, c2: &[i8; KEPT]) -> [i8; KEPT] {
    #[cfg(target_arch = "x86_64")]
    if std::arch::is_x86_feature_detected!("avx2") {
        // SAFETY: the CPU supports AVX2.
        return unsafe { merge_avx2(beta1, c1, beta2, c2) };
    }
    merge_kernel(beta1, c1, beta2, c2)
}

#[inline(always)]
fn combine_slices_with(
    a: &[CompressedBlock],
    b: &[CompressedBlock],
    sign: f64,
    merge: Merge,
) -> Result<Vec<CompressedBlock>> {
    let mut out = Vec::with_capacity(a.len());
    for (x, y) in a.iter().zip(b) {
        out.push(combine_with(x, y, sign, merge)?);
    }
    Ok(out)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
fn combine_slices_avx2(a: &[CompressedBlock], b: &[CompressedBlock], sign: f64) -> Result<Vec<CompressedBlock>> {
    combine_slices_with(a, b, sign, merge_kernel)
}

/// Block-wise `add` (`sign = 1`) or `sub` (`sign = -1`) over equal-length slices.
pub(crate) fn combine_slices(a: &[CompressedBlock], b: &[CompressedBlock], sign: f64) -> Result<Vec<CompressedBlock>> {
    #[cfg(target_arch = "x86_64")]
    if std::arch::is_x86_feature_detected!("avx2") {
        // SAFETY: the CPU supports AVX2.
        return unsafe { combine_slices_avx2(a, b, sign) };
    }
    combine_slices_with(a, b, sign, merge_kernel)
}

/// Slopes cancel (only possible after negative scaling): go through dense space.
fn combine_dense(b1: &CompressedBlock, b2: &CompressedBlock, sign: f64) -> Result<CompressedBlock> {
    let d1 = decompress_block(b1);
    let d2 = decompress_block(b2);
    let sum = DenseBlock::from_fn(|i, j| {
        if sign > 0.0 {
            d1[(i, j)] + d2[(i, j)]
        } else {
            d1[(i, j)] - d2[(i, j)]
        }
    })?;
    compress_block(&sum)
}

/// Multiplies a compressed block by a constant. Only `f` and `s` change.
pub fn scale(b: &CompressedBlock, c: f64) -> Result<CompressedBlock> {
    if !c.is_finite() {
        return Err(Error::InvalidInput(format!("scale factor {c} is not finite")));
    }
    CompressedBlock::with_checked_header(b.f() * c, b.s() * c, b.phi(), *b.coeffs())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lines {
    Rows,
    Cols,
}

/// Leading rows or columns of a decompressed block.
///
/// `line(r)` is row `r` (or column `r`) of [`decompress_block`]'s output,
/// bitwise.
#[derive(Clone, Copy, Debug)]
pub struct PartialReconstruction {
    grid: Grid,
    lines: Lines,
    extent: usize,
}

impl PartialReconstruction {
    pub fn orientation(&self) -> Lines {
        self.lines
    }

    /// Number of materialized lines.
    pub fn extent(&self) -> usize {
        self.extent
    }

    pub fn line(&self, r: usize) -> Option<[f64; BLOCK]> {
        if r >= self.extent {
            return None;
        }
        Some(match self.lines {
            Lines::Rows => self.grid[r],
            Lines::Cols => std::array::from_fn(|i| self.grid[i][r]),
        })
    }

    /// Entry `(i, j)` in block coordinates, if it was materialized.
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        let inside = match self.lines {
            Lines::Rows => i < self.extent,
            Lines::Cols => j < self.extent,
        };
        (inside && i < BLOCK && j < BLOCK).then(|| self.grid[i][j])
    }
}

fn check_line(index: usize) -> Result<()> {
    if index >= BLOCK {
        return Err(Error::IndexOutOfRange { what: "block line", index, bound: BLOCK });
    }
    Ok(())
}

/// Reconstructs rows `0..=i`.
pub fn reconstruct_rows(b: &CompressedBlock, i: usize) -> Result<PartialReconstruction> {
    check_line(i)?;
    Ok(PartialReconstruction {
        grid: integrate_rows(b.f(), &residuals(b), i + 1),
        lines: Lines::Rows,
        extent: i + 1,
    })
}

/// Reconstructs columns `0..=j` (every row of them).
pub fn reconstruct_cols(b: &CompressedBlock, j: usize) -> Result<PartialReconstruction> {
    check_line(j)?;
    Ok(PartialReconstruction {
        grid: integrate_cols(b.f(), &residuals(b), j + 1),
        lines: Lines::Cols,
        extent: j + 1,
    })
}

/// Dot product of row `i` of `b1` with column `j` of `b2`, accumulated in
/// ascending `k`.
pub fn dot(b1: &CompressedBlock, b2: &CompressedBlock, i: usize, j: usize) -> Result<f64> {
    let rows = reconstruct_rows(b1, i)?;
    let cols = reconstruct_cols(b2, j)?;
    let mut r = 0.0;
    for k in 0..BLOCK {
        r += rows.grid[i][k] * cols.grid[k][j];
    }
    Ok(r)
}

/// 8×8 product of two compressed blocks. Each operand is decompressed once.
pub fn block_mul(b1: &CompressedBlock, b2: &CompressedBlock) -> DenseBlock {
    let a = decompress_block(b1);
    let b = decompress_block(b2);
    let mut out = [[0.0; BLOCK]; BLOCK];
    mul_accumulate(&mut out, a.values(), b.values(), BLOCK);
    DenseBlock::from_grid_unchecked(out)
}

/// `acc[i][j] += Σ_{k < depth} a[i][k] · b[k][j]`, ascending `k` per entry.
pub(crate) fn mul_accumulate(acc: &mut Grid, a: &Grid, b: &Grid, depth: usize) {
    for i in 0..BLOCK {
        for k in 0..depth {
            let aik = a[i][k];
            for j in 0..BLOCK {
                acc[i][j] += aik * b[k][j];
            }
        }
    }
}
