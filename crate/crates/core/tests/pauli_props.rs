use proptest::prelude::*;
use vqls_core::device::{assemble_system, Column, DeviceSpec};
use vqls_core::linalg::ComplexMatrix;
use vqls_core::pauli::{build_h0, build_h0_squared, decompose_diagonal};
use vqls_core::Complex64;

fn diagonal_strategy() -> impl Strategy<Value = Vec<Complex64>> {
    (0..=6usize).prop_flat_map(|n| {
        prop::collection::vec((-1e3..1e3f64, -1e3..1e3f64), 1 << n)
            .prop_map(|v| v.into_iter().map(|(r, i)| Complex64::new(r, i)).collect())
    })
}

/// Smooth random potential: a few low harmonics plus a barrier.
fn device_strategy() -> impl Strategy<Value = DeviceSpec<f64>> {
    (
        prop::sample::select(vec![4usize, 8, 16, 32]),
        2.0..20.0f64,
        0.1..1.0f64,
        prop::collection::vec(-0.2..0.2f64, 3),
        (-0.1..0.1f64, -0.1..0.1f64),
        1e-6..1e-2f64,
    )
        .prop_map(|(n, length, m_rel, amps, contacts, eta)| {
            let potential = (0..n)
                .map(|i| {
                    let x = (i as f64 + 0.5) / n as f64;
                    amps.iter().enumerate().map(|(k, a)| a * (std::f64::consts::PI * (k + 1) as f64 * x).sin()).sum()
                })
                .collect();
            DeviceSpec::new(n, length, m_rel, potential, contacts, eta).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn walsh_round_trip(d in diagonal_strategy()) {
        let dec = decompose_diagonal(&d, 0.0).unwrap();
        let dense = dec.op.to_dense().unwrap();
        let want = ComplexMatrix::from_diagonal(&d);
        prop_assert!(dense.distance(&want) <= 1e-12 * want.frobenius_norm().max(1.0));
        prop_assert_eq!(dec.truncation_bound, 0.0);
    }

    #[test]
    fn linear_ramp_is_sparse(n in 1..=6usize, slope in -50.0..50.0f64, offset in -5.0..5.0f64) {
        let d: Vec<Complex64> = (0..1 << n).map(|i| Complex64::new(offset + slope * i as f64, 0.0)).collect();
        let dec = decompose_diagonal(&d, 0.0).unwrap();
        let nonzero = dec.coefficients.iter().filter(|c| c.norm() > 1e-12 * slope.abs().max(1.0)).count();
        prop_assert!(nonzero <= n + 1);
    }

    #[test]
    fn truncation_bound_is_monotone(d in diagonal_strategy(), mut t in prop::collection::vec(0.0..0.999f64, 2..6)) {
        t.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let bounds: Vec<f64> = t.iter().map(|&r| decompose_diagonal(&d, r).unwrap().truncation_bound).collect();
        for w in bounds.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
        for &r in &t {
            let dec = decompose_diagonal(&d, r).unwrap();
            prop_assert!(dec.truncation_error <= dec.truncation_bound * (1.0 + 1e-12) + 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn assembled_operator_matches_dense(device in device_strategy(), e in -0.2..0.6f64, drain in any::<bool>()) {
        let column = if drain { Column::Drain } else { Column::Source };
        let sys = assemble_system(&device, e, column).unwrap();
        let want = device.dense_a(e);
        prop_assert!(sys.a.to_dense().unwrap().distance(&want) < 1e-10);
        let gram = &want.adjoint() * &want;
        let got = sys.adag_a.to_dense().unwrap();
        prop_assert!(got.distance(&gram) < 1e-10 * gram.frobenius_norm());
    }
}

#[test]
fn h0_squared_closed_form() {
    for n in 2..=6 {
        for t0 in [0.3, 1.0, 2.7] {
            let h = build_h0(n, t0).unwrap().to_dense().unwrap();
            let sq = build_h0_squared(n, t0).unwrap().to_dense().unwrap();
            assert!(sq.distance(&(&h * &h)) < 1e-10, "n={n} t0={t0}");
        }
    }
}
