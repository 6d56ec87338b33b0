mod common;

use common::*;
use compressed_matrix::bench::{example_block, TestFunction};
use compressed_matrix::codec::*;
use proptest::prelude::*;

fn example_trace() -> CompressionTrace {
    trace_block(&example_block()).unwrap()
}

#[test]
fn example_normalization_matches_printed_deltas() {
    let (f, deltas) = normalize(&example_block()).unwrap();
    assert_eq!(f, 0.0);
    let d = deltas.values();
    for (i, j, want) in [(1, 1, 0.010), (2, 1, 0.015), (7, 7, 0.070)] {
        assert!((d[i][j] - want).abs() <= 5e-4, "Δ[{i}][{j}] = {}", d[i][j]);
    }
    let printed = example_deltas();
    for i in 0..BLOCK {
        for j in 0..BLOCK {
            assert!((d[i][j] - printed[i][j]).abs() <= 5e-4);
        }
    }
}

#[test]
fn example_deltas_integrate_back_to_example_block() {
    let rebuilt = denormalize(0.0, &DeltaBlock::new(example_deltas()).unwrap());
    let a = example_block();
    for i in 0..BLOCK {
        for j in 0..BLOCK {
            assert!((rebuilt[(i, j)] - a[(i, j)]).abs() <= 1e-12);
        }
    }
}

#[test]
fn copied_ramp_normalizes_by_hand() {
    let b = DenseBlock::from_fn(|_, j| j as f64).unwrap();
    let (f, d) = normalize(&b).unwrap();
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
fn example_mean_slope_is_exact() {
    let (_, d) = normalize(&example_block()).unwrap();
    assert_eq!(mean_slope(&d), 0.04);
    let n = divide_by_slope(&d, 0.04).unwrap();
    let nonzero: Vec<f64> = n.values().iter().flatten().filter(|v| **v != 0.0).map(|v| v.abs()).collect();
    let mean = nonzero.iter().sum::<f64>() / nonzero.len() as f64;
    assert!((mean - 1.0).abs() <= 1e-12);
}

#[test]
fn example_prediction_matches_printed_indices() {
    let t = example_trace();
    let stages = t.stages.as_ref().unwrap();
    assert_eq!(stages.prediction.indices, EXAMPLE_INDICES);
}

#[test]
fn printed_slopes_snap_to_printed_indices() {
    let n = NormalizedBlock::new(example_slopes()).unwrap();
    let (p, _) = predict(&n, 0.04).unwrap();
    assert_eq!(p.indices, EXAMPLE_INDICES);
    let pairs = [(0.0, 125u8), (0.25, 143), (0.375, 153), (1.25, 217), (1.75, 253)];
    for (v, k) in pairs {
        let hit = (0..BLOCK)
            .flat_map(|i| (0..BLOCK).map(move |j| (i, j)))
            .find(|&(i, j)| example_slopes()[i][j] == v)
            .unwrap();
        assert_eq!(p.indices[hit.0][hit.1], k, "Δ' = {v}");
    }
}

#[test]
fn snapped_example_has_expected_dc() {
    let t = example_trace();
    let d = t.stages.unwrap().spectrum;
    assert!((d[0][0] - 6.125).abs() <= 0.05, "D00 = {}", d[0][0]);
}

#[test]
fn example_compresses_to_printed_record() {
    let cb = example_trace().compressed;
    assert_eq!(cb.f(), 0.0);
    assert_eq!(cb.s(), 0.04);
    assert_eq!(cb.phi(), 20);
    for (k, &(i, j)) in KEEP_SET.iter().enumerate() {
        let want = EXAMPLE_SPECTRUM[i][j];
        let got = cb.coeffs()[k] as i32;
        assert!((got - want).abs() <= 2, "({i},{j}): {got} vs {want}");
    }
    assert!((cb.coeffs()[0] as i32 - 122).abs() <= 2);
    assert!((cb.coeffs()[1] as i32 + 51).abs() <= 2);
}

#[test]
fn example_dequantizes_near_normalized_slopes() {
    let cb = example_trace().compressed;
    let got = dequantize_prediction(&cb);
    let want = example_slopes();
    for i in 0..BLOCK {
        for j in 0..BLOCK {
            assert!((got[i][j] - want[i][j]).abs() <= 0.08, "({i},{j}): {} vs {}", got[i][j], want[i][j]);
        }
    }
}

#[test]
fn example_round_trip_error_is_small() {
    let a = example_block();
    let back = decompress_block(&compress_block(&a).unwrap());
    for i in 0..BLOCK {
        for j in 0..BLOCK {
            assert!((back[(i, j)] - a[(i, j)]).abs() <= 0.02);
        }
    }
}

#[test]
fn dct_constant_and_dc_cases() {
    let d = dct2(&[[3.5; BLOCK]; BLOCK]);
    for i in 0..BLOCK {
        for j in 0..BLOCK {
            let want = if (i, j) == (0, 0) { 28.0 } else { 0.0 };
            assert!((d[i][j] - want).abs() <= 1e-12);
        }
    }
    let mut dc = [[0.0; BLOCK]; BLOCK];
    dc[0][0] = 8.0;
    for v in idct2(&dc).iter().flatten() {
        assert!((v - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn dct_matches_direct_sum() {
    let mut r = rng(11);
    for _ in 0..100 {
        let x = random_grid(&mut r, 10.0);
        let fast = dct2(&x);
        let slow = dct_oracle(&x);
        for i in 0..BLOCK {
            for j in 0..BLOCK {
                assert!((fast[i][j] - slow[i][j]).abs() <= 1e-12, "{} vs {}", fast[i][j], slow[i][j]);
            }
        }
    }
}

#[test]
fn dct_is_linear() {
    let mut r = rng(12);
    for _ in 0..100 {
        let (x, y) = (random_grid(&mut r, 10.0), random_grid(&mut r, 10.0));
        let mut xy = x;
        for i in 0..BLOCK {
            for j in 0..BLOCK {
                xy[i][j] += y[i][j];
            }
        }
        let (dx, dy, dxy) = (dct2(&x), dct2(&y), dct2(&xy));
        for i in 0..BLOCK {
            for j in 0..BLOCK {
                assert!((dxy[i][j] - dx[i][j] - dy[i][j]).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn quantizer_matches_brute_force_nearest() {
    let mut r = rng(13);
    use rand::Rng;
    for _ in 0..20 {
        let q = SlopeQuantizer::new(r.gen_range(-5.0..5.0), r.gen_range(0.1..50.0));
        for _ in 0..200 {
            let v = q.lo() + r.gen_range(0.0..255.0) * q.step();
            let snapped = q.decode(q.encode(v));
            let nearest = (0..=255u8)
                .map(|k| q.lo() + k as f64 * q.step())
                .min_by(|a, b| (a - v).abs().total_cmp(&(b - v).abs()))
                .unwrap();
            let tol = 4.0 * ulp(q.lo().abs().max((q.lo() + 256.0 * q.step()).abs()));
            assert!((snapped - v).abs() <= q.step() / 2.0 + tol);
            assert!((snapped - v).abs() <= (nearest - v).abs() + tol);
        }
    }
}

#[test]
fn quantizer_clamps_out_of_range_values() {
    let q = SlopeQuantizer::new(1.0, 2.0);
    assert_eq!(q.encode(q.lo() - 10.0), 0);
    assert_eq!(q.encode(q.lo() + 300.0 * q.step()), 255);
}

#[test]
fn dequantize_is_linear_in_coefficients() {
    let mut r = rng(14);
    use rand::Rng;
    for _ in 0..100 {
        let phi: u8 = r.gen_range(1..=255);
        let c: [f64; KEPT] = std::array::from_fn(|_| r.gen_range(-127..=127) as f64);
        let doubled = c.map(|v| 2.0 * v);
        let once = idct2(&expand_coeffs(phi, &c));
        let twice = idct2(&expand_coeffs(phi, &doubled));
        for i in 0..BLOCK {
            for j in 0..BLOCK {
                assert!((twice[i][j] - 2.0 * once[i][j]).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn constant_block_takes_sentinel_path() {
    let cb = compress_block(&DenseBlock::constant(-2.5).unwrap()).unwrap();
    assert!(cb.is_constant());
    assert_eq!(cb.f(), -2.5);
    for v in decompress_block(&cb).values().iter().flatten() {
        assert_eq!(*v, -2.5);
    }
}

#[test]
fn f1_grid_round_trip_within_one_percent() {
    use compressed_matrix::bench::mean_relative_error;
    use compressed_matrix::matrix::{compress_matrix, decompress_matrix};
    let m = TestFunction::F1.grid(512).unwrap();
    let back = decompress_matrix(&compress_matrix(&m).unwrap());
    let e = mean_relative_error(&m, &back).unwrap();
    assert!(e.mean > 0.0 && e.mean <= 0.01, "{}", e.mean);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalize_round_trips(seed in any::<u64>()) {
        let b = random_block(&mut rng(seed));
        let (f, d) = normalize(&b).unwrap();
        let back = denormalize(f, &d);
        let scale = b.values().iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
        for i in 0..BLOCK {
            for j in 0..BLOCK {
                prop_assert!((back[(i, j)] - b[(i, j)]).abs() <= 1e-10 * scale);
            }
        }
    }

    #[test]
    fn normalized_slopes_have_unit_mean(seed in any::<u64>()) {
        let b = random_block(&mut rng(seed));
        let (_, d) = normalize(&b).unwrap();
        let s = mean_slope(&d);
        prop_assume!(s > 0.0);
        let n = divide_by_slope(&d, s).unwrap();
        let nz: Vec<f64> = n.values().iter().flatten().filter(|v| **v != 0.0).map(|v| v.abs()).collect();
        prop_assert!((nz.iter().sum::<f64>() / nz.len() as f64 - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn dct_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_grid(&mut r, 10.0);
        let back = idct2(&dct2(&x));
        let d = random_grid(&mut r, 10.0);
        let back_d = dct2(&idct2(&d));
        for i in 0..BLOCK {
            for j in 0..BLOCK {
                prop_assert!((back[i][j] - x[i][j]).abs() <= 1e-12);
                prop_assert!((back_d[i][j] - d[i][j]).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn compressed_fields_are_in_range(seed in any::<u64>()) {
        let b = random_block(&mut rng(seed));
        let cb = compress_block(&b).unwrap();
        prop_assert!(cb.phi() >= 1);
        prop_assert!(cb.coeffs().iter().all(|c| *c != i8::MIN));
        prop_assert!(cb.s() >= 0.0);
        prop_assert!(decompress_block(&cb).values().iter().flatten().all(|v| v.is_finite()));
        prop_assert!(dequantize_prediction(&cb).iter().flatten().all(|v| v.is_finite()));
    }
}
