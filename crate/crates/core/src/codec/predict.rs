//! Snapping normalized slopes onto 256 equidistant reference slopes.

use super::normalize::NormalizedBlock;
use super::{Grid, BLOCK};
use crate::{Error, Result};

/// Uniform 256-level quantizer over `[lo, lo + 256·step)`.
///
/// Level `k` decodes to `lo + k·step`. Encoding rounds half away from zero
/// and clamps to `0..=255`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlopeQuantizer {
    lo: f64,
    step: f64,
}

impl SlopeQuantizer {
    pub const LEVELS: usize = 256;

    /// Quantizer for the interval `[center − half_width, center + half_width]`.
    pub fn new(center: f64, half_width: f64) -> Self {
        SlopeQuantizer {
            lo: center - half_width,
            step: 2.0 * half_width / Self::LEVELS as f64,
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn encode(&self, v: f64) -> u8 {
        if self.step == 0.0 {
            return 0;
        }
        ((v - self.lo) / self.step).round().clamp(0.0, 255.0) as u8
    }

    pub fn decode(&self, k: u8) -> f64 {
        self.lo + f64::from(k) * self.step
    }
}

/// Level indices together with the slopes they decode to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PredictionBlock {
    pub indices: [[u8; BLOCK]; BLOCK],
    pub snapped: Grid,
}

/// Replaces each normalized slope by its closest reference slope.
///
/// The reference set spans `[s − s_max, s + s_max]` where `s_max` is the
/// largest slope magnitude in the block.
pub fn predict(norm: &NormalizedBlock, s: f64) -> Result<(PredictionBlock, SlopeQuantizer)> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Precondition(format!("mean slope must be positive, got {s}")));
    }
    let s_max = norm.values().iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    let q = SlopeQuantizer::new(s, s_max);
    let mut indices = [[0u8; BLOCK]; BLOCK];
    let mut snapped = [[0.0; BLOCK]; BLOCK];
    for i in 0..BLOCK {
        for j in 0..BLOCK {
            let k = q.encode(norm.values()[i][j]);
            indices[i][j] = k;
            snapped[i][j] = q.decode(k);
        }
    }
    Ok((PredictionBlock { indices, snapped }, q))
}
