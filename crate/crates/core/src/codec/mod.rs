//! Per-block compression pipeline.
//!
//! ```text
//! block ─ normalize ─ mean slope ─ divide ─ snap to slope set ─ DCT-II ─ quantize 28 coefficients
//! ```
//!
//! The snapped slopes are transformed (not the level indices), so the reference
//! interval never needs to be stored: decompression recovers the slopes from
//! the coefficients alone.

mod dct;
mod normalize;
mod predict;

use std::ops::Index;

pub use dct::{dct2, idct2};
pub use normalize::{denormalize, divide_by_slope, mean_slope, normalize, DeltaBlock, NormalizedBlock};
pub use predict::{predict, PredictionBlock, SlopeQuantizer};

pub(crate) use normalize::{integrate_cols, integrate_rows};

use crate::{Error, Result};

/// Block side length.
pub const BLOCK: usize = 8;
/// Number of transform coefficients kept per block.
pub const KEPT: usize = 28;
/// Serialized size of one compressed block (two `f64`, `phi`, 28 coefficients).
pub const PAYLOAD_BYTES: usize = 8 + 8 + 1 + KEPT;
/// Uncompressed bits per block divided by compressed bits per block.
pub const COMPRESSION_RATE: f64 = (BLOCK * BLOCK * 64) as f64 / (PAYLOAD_BYTES * 8) as f64;

pub type Grid = [[f64; BLOCK]; BLOCK];

/// Storage order of the kept coefficients: row 0, row 1, then column 0 and
/// column 1 below row 1.
pub const KEEP_SET: [(usize, usize); KEPT] = keep_set();

const fn keep_set() -> [(usize, usize); KEPT] {
    let mut out = [(0, 0); KEPT];
    let mut n = 0;
    let mut row = 0;
    while row < 2 {
        let mut col = 0;
        while col < BLOCK {
            out[n] = (row, col);
            n += 1;
            col += 1;
        }
        row += 1;
    }
    let mut col = 0;
    while col < 2 {
        let mut row = 2;
        while row < BLOCK {
            out[n] = (row, col);
            n += 1;
            row += 1;
        }
        col += 1;
    }
    out
}

/// An 8×8 block of finite `f64` values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DenseBlock(Grid);

impl DenseBlock {
    pub fn new(values: Grid) -> Result<Self> {
        if values.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("block holds a non-finite value".into()));
        }
        Ok(DenseBlock(values))
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut g = [[0.0; BLOCK]; BLOCK];
        for (i, row) in g.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = f(i, j);
            }
        }
        Self::new(g)
    }

    pub fn constant(c: f64) -> Result<Self> {
        Self::new([[c; BLOCK]; BLOCK])
    }

    pub(crate) fn from_grid_unchecked(values: Grid) -> Self {
        DenseBlock(values)
    }

    pub fn values(&self) -> &Grid {
        &self.0
    }
}

impl Index<(usize, usize)> for DenseBlock {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

/// A compressed 8×8 block: 360 bits of payload.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompressedBlock {
    f: f64,
    s: f64,
    phi: u8,
    coeffs: [i8; KEPT],
}

impl CompressedBlock {
    /// Validates the field invariants: finite `f` and `s`, `phi >= 1`, and
    /// coefficients in `-127..=127`.
    pub fn new(f: f64, s: f64, phi: u8, coeffs: [i8; KEPT]) -> Result<Self> {
        if !f.is_finite() || !s.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite block header f={f} s={s}")));
        }
        if phi == 0 {
            return Err(Error::InvalidInput("scale factor must be at least 1".into()));
        }
        if coeffs.contains(&i8::MIN) {
            return Err(Error::InvalidInput("coefficient -128 is out of range".into()));
        }
        Ok(CompressedBlock { f, s, phi, coeffs })
    }

    /// `new` for callers whose `phi` and coefficients are valid by
    /// construction; only the header is checked.
    #[inline]
    pub(crate) fn with_checked_header(f: f64, s: f64, phi: u8, coeffs: [i8; KEPT]) -> Result<Self> {
        debug_assert!(phi >= 1 && !coeffs.contains(&i8::MIN));
        if !f.is_finite() || !s.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite block header f={f} s={s}")));
        }
        Ok(CompressedBlock { f, s, phi, coeffs })
    }

    /// The compressed form of a block whose entries all equal `c`.
    pub fn constant(c: f64) -> Result<Self> {
        Self::new(c, 0.0, 1, [0; KEPT])
    }

    /// First element of the block.
    pub fn f(&self) -> f64 {
        self.f
    }

    /// Mean slope. Zero for constant blocks; may be negative after scaling.
    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn phi(&self) -> u8 {
        self.phi
    }

    pub fn coeffs(&self) -> &[i8; KEPT] {
        &self.coeffs
    }

    /// True when the block decompresses to the constant `f`.
    pub fn is_constant(&self) -> bool {
        self.s == 0.0
    }

    /// Field-wise equality comparing floats by bit pattern.
    pub fn bitwise_eq(&self, other: &Self) -> bool {
        self.f.to_bits() == other.f.to_bits()
            && self.s.to_bits() == other.s.to_bits()
            && self.phi == other.phi
            && self.coeffs == other.coeffs
    }
}

/// Round half away from zero, then clamp to the symmetric signed-byte range.
///
/// Avoids `f64::round`, a library call on baseline x86-64. On `[-127, 127]`
/// adding the largest double below one half and truncating rounds ties away
/// from zero exactly.
#[inline]
pub(crate) fn round_coeff(x: f64) -> i8 {
    const BELOW_HALF: f64 = 0.499_999_999_999_999_94;
    // max/min discard NaN, so y is a number in [-127, 127].
    let y = x.max(-127.0).min(127.0);
    // SAFETY: |y + BELOW_HALF| < 127.5, which fits an i32.
    unsafe { (y + BELOW_HALF.copysign(y)).to_int_unchecked::<i32>() as i8 }
}

/// Scale factor and kept coefficients of a transformed block.
///
/// `phi = floor(127 / m)` with `m` the largest coefficient magnitude over the
/// whole block, clamped to `1..=255` (`1` when `m == 0`).
pub fn quantize_coeffs(d: &Grid) -> (u8, [i8; KEPT]) {
    let m = d.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    let phi = if m == 0.0 {
        1
    } else {
        (127.0 / m).floor().clamp(1.0, 255.0) as u8
    };
    let scale = f64::from(phi);
    let mut coeffs = [0i8; KEPT];
    for (c, &(i, j)) in coeffs.iter_mut().zip(KEEP_SET.iter()) {
        *c = round_coeff(scale * d[i][j]);
    }
    (phi, coeffs)
}

/// Places `coeffs / phi` at the keep-set positions; every other entry is zero.
pub fn expand_coeffs(phi: u8, coeffs: &[f64; KEPT]) -> Grid {
    let scale = f64::from(phi);
    let mut g = [[0.0; BLOCK]; BLOCK];
    for (c, &(i, j)) in coeffs.iter().zip(KEEP_SET.iter()) {
        g[i][j] = c / scale;
    }
    g
}

/// Recovers the (approximate) snapped slopes of a compressed block.
pub fn dequantize_prediction(cb: &CompressedBlock) -> Grid {
    if cb.is_constant() {
        return [[0.0; BLOCK]; BLOCK];
    }
    idct2(&expand_coeffs(cb.phi, &cb.coeffs.map(f64::from)))
}

/// `s · slopes`: the per-entry residual added during reconstruction.
pub(crate) fn residuals(cb: &CompressedBlock) -> Grid {
    let mut r = dequantize_prediction(cb);
    for v in r.iter_mut().flatten() {
        *v *= cb.s;
    }
    r
}

/// Runs the full compression pipeline on one block.
pub fn compress_block(block: &DenseBlock) -> Result<CompressedBlock> {
    Ok(trace_block(block)?.compressed)
}

/// Every intermediate stage of compressing one block.
#[derive(Clone, Debug)]
pub struct CompressionTrace {
    pub deltas: DeltaBlock,
    /// `None` for constant blocks, which skip prediction and transform.
    pub stages: Option<TraceStages>,
    pub compressed: CompressedBlock,
}

#[derive(Clone, Debug)]
pub struct TraceStages {
    pub normalized: NormalizedBlock,
    pub prediction: PredictionBlock,
    pub quantizer: SlopeQuantizer,
    pub spectrum: Grid,
}

/// Compresses a block and keeps every intermediate result.
pub fn trace_block(block: &DenseBlock) -> Result<CompressionTrace> {
    let (f, deltas) = normalize(block)?;
    let s = mean_slope(&deltas);
    if s == 0.0 {
        return Ok(CompressionTrace {
            deltas,
            stages: None,
            compressed: CompressedBlock::constant(f)?,
        });
    }
    let normalized = divide_by_slope(&deltas, s)?;
    let (prediction, quantizer) = predict(&normalized, s)?;
    let spectrum = dct2(&prediction.snapped);
    let (phi, coeffs) = quantize_coeffs(&spectrum);
    Ok(CompressionTrace {
        deltas,
        stages: Some(TraceStages {
            normalized,
            prediction,
            quantizer,
            spectrum,
        }),
        compressed: CompressedBlock::new(f, s, phi, coeffs)?,
    })
}

/// Reconstructs the dense block.
pub fn decompress_block(cb: &CompressedBlock) -> DenseBlock {
    DenseBlock::from_grid_unchecked(integrate_rows(cb.f, &residuals(cb), BLOCK))
}
