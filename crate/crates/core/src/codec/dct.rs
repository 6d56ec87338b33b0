//! Orthonormal 8×8 DCT-II and its inverse, evaluated separably.

use std::f64::consts::PI;
use std::sync::LazyLock;

use super::{Grid, BLOCK};

/// `BASIS[u][x] = α_u · cos((2x + 1)uπ / 16)`, with `α_0 = √(1/8)` and
/// `α_u = √(1/4)` otherwise.
static BASIS: LazyLock<Grid> = LazyLock::new(|| {
    let mut b = [[0.0; BLOCK]; BLOCK];
    for (u, row) in b.iter_mut().enumerate() {
        let alpha = if u == 0 { (1.0f64 / 8.0).sqrt() } else { 0.5 };
        for (x, v) in row.iter_mut().enumerate() {
            *v = alpha * (((2 * x + 1) * u) as f64 * PI / 16.0).cos();
        }
    }
    b
});

/// Forward transform: `D = B · X · Bᵀ`.
pub fn dct2(x: &Grid) -> Grid {
    let b = &*BASIS;
    let mut tmp = [[0.0; BLOCK]; BLOCK];
    for u in 0..BLOCK {
        for k in 0..BLOCK {
            let w = b[u][k];
            for y in 0..BLOCK {
                tmp[u][y] += w * x[k][y];
            }
        }
    }
    let mut out = [[0.0; BLOCK]; BLOCK];
    for u in 0..BLOCK {
        for v in 0..BLOCK {
            let mut acc = 0.0;
            for y in 0..BLOCK {
                acc += tmp[u][y] * b[v][y];
            }
            out[u][v] = acc;
        }
    }
    out
}

/// Inverse transform: `X = Bᵀ · D · B`.
pub fn idct2(d: &Grid) -> Grid {
    let b = &*BASIS;
    let mut tmp = [[0.0; BLOCK]; BLOCK];
    for x in 0..BLOCK {
        for u in 0..BLOCK {
            let w = b[u][x];
            for v in 0..BLOCK {
                tmp[x][v] += w * d[u][v];
            }
        }
    }
    let mut out = [[0.0; BLOCK]; BLOCK];
    for x in 0..BLOCK {
        for v in 0..BLOCK {
            let w = tmp[x][v];
            for y in 0..BLOCK {
                out[x][y] += w * b[v][y];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_is_dc_only() {
        let c = 2.5;
        let d = dct2(&[[c; BLOCK]; BLOCK]);
        for u in 0..BLOCK {
            for v in 0..BLOCK {
                let want = if u == 0 && v == 0 { 8.0 * c } else { 0.0 };
                assert!((d[u][v] - want).abs() < 1e-12, "({u},{v}) = {}", d[u][v]);
            }
        }
    }

    #[test]
    fn inverse_of_zero_and_dc() {
        assert_eq!(idct2(&[[0.0; BLOCK]; BLOCK]), [[0.0; BLOCK]; BLOCK]);
        let mut d = [[0.0; BLOCK]; BLOCK];
        d[0][0] = 8.0;
        for v in idct2(&d).iter().flatten() {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn basis_is_orthonormal() {
        let b = &*BASIS;
        for u in 0..BLOCK {
            for v in 0..BLOCK {
                let dot: f64 = (0..BLOCK).map(|x| b[u][x] * b[v][x]).sum();
                let want = if u == v { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-14);
            }
        }
    }
}
