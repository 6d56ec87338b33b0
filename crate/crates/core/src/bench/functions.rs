use std::fmt;
use std::str::FromStr;

use crate::codec::{DenseBlock, BLOCK};
use crate::matrix::DenseMatrix;
use crate::{Error, Result};

/// The six smooth surfaces used for accuracy measurements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TestFunction {
    /// `x·y`
    F1,
    /// `x·y / (1 + x² + y²)`
    F2,
    /// `x² − y`
    F3,
    /// `x²·y²`
    F4,
    /// `cos(√(x² + y²))`
    F5,
    /// `cos(x² + y²) · e^(−0.1·(x² + y²))`
    F6,
}

impl TestFunction {
    pub const ALL: [TestFunction; 6] = [Self::F1, Self::F2, Self::F3, Self::F4, Self::F5, Self::F6];

    pub fn eval(self, x: f64, y: f64) -> f64 {
        match self {
            Self::F1 => x * y,
            Self::F2 => x * y / (1.0 + x * x + y * y),
            Self::F3 => x * x - y,
            Self::F4 => x * x * y * y,
            Self::F5 => (x * x + y * y).sqrt().cos(),
            Self::F6 => {
                let r2 = x * x + y * y;
                r2.cos() * (-0.1 * r2).exp()
            }
        }
    }

    /// 1-based index, so `F1.index() == 1`.
    pub fn index(self) -> usize {
        Self::ALL.iter().position(|f| *f == self).unwrap() + 1
    }

    /// Matrix label used in reports (`M1`..`M6`).
    pub fn matrix_label(self) -> String {
        format!("M{}", self.index())
    }

    /// `n×n` samples on `[−2, 2]²`: `M[i][j] = f(x_j, y_i)` with
    /// `x_j = −2 + 4j/(n−1)` and the same nodes for `y`.
    pub fn grid(self, n: usize) -> Result<DenseMatrix> {
        gen_matrix(self, n)
    }

    /// One 8×8 block sampled from the origin with spacing `step`.
    pub fn block_at_origin(self, step: f64) -> DenseBlock {
        DenseBlock::from_fn(|i, j| self.eval(j as f64 * step, i as f64 * step))
            .expect("test functions are finite near the origin")
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.index())
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f1" => Ok(Self::F1),
            "f2" => Ok(Self::F2),
            "f3" => Ok(Self::F3),
            "f4" => Ok(Self::F4),
            "f5" => Ok(Self::F5),
            "f6" => Ok(Self::F6),
            _ => Err(Error::InvalidInput(format!("unknown test function {s:?} (expected f1..f6)"))),
        }
    }
}

pub fn grid_node(k: usize, n: usize) -> f64 {
    -2.0 + 4.0 * k as f64 / (n - 1) as f64
}

pub fn gen_matrix(func: TestFunction, n: usize) -> Result<DenseMatrix> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("grid size must be at least 2, got {n}")));
    }
    let nodes: Vec<f64> = (0..n).map(|k| grid_node(k, n)).collect();
    DenseMatrix::from_fn(n, n, |i, j| func.eval(nodes[j], nodes[i]))
}

/// The `f1` block sampled from the origin with step 0.1, used as a worked
/// example throughout the tests.
pub fn example_block() -> DenseBlock {
    debug_assert_eq!(BLOCK, 8);
    TestFunction::F1.block_at_origin(0.1)
}
