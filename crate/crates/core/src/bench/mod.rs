//! Evaluation harness: test matrices, accuracy tables and timing runs.

mod accuracy;
mod functions;
mod timing;

pub use accuracy::{
    accuracy_suite, mean_relative_error, write_accuracy_csv, ErrorReport, RelativeError,
    SUITE_SCALAR, ZERO_THRESHOLD,
};
pub use functions::{example_block, gen_matrix, grid_node, TestFunction};
pub use timing::{bench_suite, write_bench_csv, BenchOp, BenchRecord, Variant, MIN_REPEATS};
