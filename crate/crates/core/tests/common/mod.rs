#![allow(dead_code)]

use std::f64::consts::PI;

use compressed_matrix::codec::{CompressedBlock, DenseBlock, Grid, BLOCK, KEPT};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Normalized deltas of the worked-example block, as printed (3 decimals).
pub fn example_deltas() -> Grid {
    let mut g = [[0.0; BLOCK]; BLOCK];
    for i in 1..BLOCK {
        for j in 1..BLOCK {
            g[i][j] = 0.005 * (i + j) as f64;
        }
    }
    g
}

/// Deltas divided by the mean slope 0.04, as printed.
pub fn example_slopes() -> Grid {
    let mut g = [[0.0; BLOCK]; BLOCK];
    for i in 1..BLOCK {
        for j in 1..BLOCK {
            g[i][j] = 0.125 * (i + j) as f64;
        }
    }
    g
}

/// Level indices printed for the worked example.
pub const EXAMPLE_INDICES: [[u8; 8]; 8] = [
    [125, 125, 125, 125, 125, 125, 125, 125],
    [125, 143, 153, 162, 171, 180, 189, 198],
    [125, 153, 162, 171, 180, 189, 198, 207],
    [125, 162, 171, 180, 189, 198, 207, 217],
    [125, 171, 180, 189, 198, 207, 217, 226],
    [125, 180, 189, 198, 207, 217, 226, 235],
    [125, 189, 198, 207, 217, 226, 235, 244],
    [125, 198, 207, 217, 226, 235, 244, 253],
];

/// Rescaled transform printed for the worked example (only the first two
/// rows and columns are kept).
pub const EXAMPLE_SPECTRUM: [[i32; 8]; 8] = [
    [122, -51, -11, -14, -8, -8, -4, -2],
    [-51, 15, 7, 7, 5, 4, 3, 1],
    [-11, 7, 0, 0, 0, 0, 0, 0],
    [-14, 7, 0, 1, 0, 0, 0, 0],
    [-8, 5, 0, 0, 0, 0, 0, 0],
    [-8, 4, 0, 0, 0, 0, 0, 0],
    [-4, 3, 0, 0, 0, 0, 0, 0],
    [-2, 1, 0, 0, 0, 0, 0, 0],
];

/// Direct double-sum evaluation of the orthonormal 2-D DCT-II.
pub fn dct_oracle(x: &Grid) -> Grid {
    let alpha = |k: usize| if k == 0 { (1.0f64 / 8.0).sqrt() } else { (1.0f64 / 4.0).sqrt() };
    let mut d = [[0.0; BLOCK]; BLOCK];
    for i in 0..BLOCK {
        for j in 0..BLOCK {
            let mut sum = 0.0;
            for u in 0..BLOCK {
                for v in 0..BLOCK {
                    sum += x[u][v]
                        * (((2 * u + 1) * i) as f64 * PI / 16.0).cos()
                        * (((2 * v + 1) * j) as f64 * PI / 16.0).cos();
                }
            }
            d[i][j] = alpha(i) * alpha(j) * sum;
        }
    }
    d
}

pub fn random_grid(rng: &mut impl Rng, scale: f64) -> Grid {
    let mut g = [[0.0; BLOCK]; BLOCK];
    for v in g.iter_mut().flatten() {
        *v = rng.gen_range(-scale..scale);
    }
    g
}

/// Either a smooth surface with random coefficients or uniform noise.
pub fn random_block(rng: &mut impl Rng) -> DenseBlock {
    if rng.gen_bool(0.7) {
        let (a, b, c, d, e) = (
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-0.2..0.2),
            rng.gen_range(0.1..2.0),
        );
        let h = rng.gen_range(0.001..0.2);
        DenseBlock::from_fn(|i, j| {
            let (x, y) = (j as f64 * h, i as f64 * h);
            a + b * x + c * y + d * x * y + (e * x).sin() * y
        })
        .unwrap()
    } else {
        let scale = 10f64.powi(rng.gen_range(-3..4));
        DenseBlock::new(random_grid(rng, scale)).unwrap()
    }
}

/// Arbitrary valid compressed block (not necessarily produced by the codec).
pub fn random_compressed(rng: &mut impl Rng) -> CompressedBlock {
    let mut coeffs = [0i8; KEPT];
    for c in coeffs.iter_mut() {
        *c = rng.gen_range(-127..=127);
    }
    let s = if rng.gen_bool(0.1) { 0.0 } else { rng.gen_range(-2.0..2.0) };
    CompressedBlock::new(rng.gen_range(-100.0..100.0), s, rng.gen_range(1..=255), coeffs).unwrap()
}

pub fn ulp(x: f64) -> f64 {
    let a = x.abs();
    a.next_up() - a
}
