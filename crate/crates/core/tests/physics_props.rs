use proptest::prelude::*;
use vqls_core::device::{
    assemble_block_system, assemble_system, broadening, lead_self_energy, Column, DeviceSpec, EnergyGrid,
};
use vqls_core::linalg::ComplexMatrix;
use vqls_core::oracle::{
    current_spectrum, green_columns, ldos, solve_dense, solve_system, transmission, transport_sweep, Bias,
};
use vqls_core::qsim::{apply_operator_sum, QState};
use vqls_core::scalar::norm_sqr;
use vqls_core::Complex64;

fn flat(n: usize, eta: f64) -> DeviceSpec<f64> {
    DeviceSpec::flat(n, n as f64 * 0.3125, 0.4, eta).unwrap()
}

fn unit(n: usize, k: usize) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); n];
    e[k] = Complex64::new(1.0, 0.0);
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn self_energy_is_causal(e in -3.0..6.0f64, u in -0.5..0.5f64, t0 in 0.05..2.0f64) {
        let s = lead_self_energy(e, u, t0);
        prop_assert!(s.im <= 0.0);
        prop_assert!(broadening(s) >= 0.0);
        prop_assert!(s.norm() <= t0 * (1.0 + 1e-12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn solve_round_trips_through_operator_sum(e in -0.1..0.5f64, drain in any::<bool>(), barrier in 0.0..0.3f64) {
        let mut device = DeviceSpec::<f64>::default_nanosheet();
        for v in &mut device.potential {
            *v *= barrier / 0.2;
        }
        let column = if drain { Column::Drain } else { Column::Source };
        let sys = assemble_system(&device, e, column).unwrap();
        let x = solve_system(&sys).unwrap();
        let ax = apply_operator_sum(&QState::from_amplitudes(x).unwrap(), &sys.a).unwrap();
        let b = sys.b_raw();
        let err = ax.iter().zip(&b).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
        prop_assert!(err < 1e-9);
    }
}

#[test]
fn transmission_bounded_on_barrier_sweep() {
    let device = DeviceSpec::<f64>::default_nanosheet();
    let t0 = device.t0();
    let grid = EnergyGrid::linspace(-0.1, 4.0 * t0 + 0.1, 64).unwrap();
    let res = transport_sweep(&device, &grid, &Bias::default()).unwrap();
    for p in &res.points {
        assert!((0.0..=1.0 + 1e-9).contains(&p.transmission), "E={} T={}", p.energy, p.transmission);
        assert!(p.ldos.iter().all(|&l| l >= 0.0));
    }
    assert_eq!(res.points[0].transmission, 0.0);
}

#[test]
fn flat_band_unit_transmission() {
    let device = flat(16, 1e-12);
    let t0 = device.t0();
    let grid = EnergyGrid::linspace(0.05 * 4.0 * t0, 0.95 * 4.0 * t0, 101).unwrap();
    let res = transport_sweep(&device, &grid, &Bias::default()).unwrap();
    let worst = res.points.iter().map(|p| (p.transmission - 1.0).abs()).fold(0.0, f64::max);
    assert!(worst < 1e-8, "max |T − 1| = {worst}");
}

#[test]
fn flat_band_ldos_sum_rule() {
    // E = 2t₀(1 − cos k) makes the integrand smooth at the band edges
    let device = flat(8, 1e-9);
    let t0 = device.t0();
    let steps = 4000;
    let dk = std::f64::consts::PI / steps as f64;
    let mut total = vec![0.0; device.n_sites];
    for s in 0..steps {
        let k = (s as f64 + 0.5) * dk;
        let e = 2.0 * t0 * (1.0 - k.cos());
        let (g_src, g_drn) = green_columns(&device, e).unwrap();
        let (s1, s2) = device.self_energies(e);
        let l = ldos(&g_src, &g_drn, broadening(s1), broadening(s2));
        for (acc, v) in total.iter_mut().zip(l) {
            *acc += v * 2.0 * t0 * k.sin() * dk;
        }
    }
    for (site, &n) in total.iter().enumerate() {
        assert!((n - 1.0).abs() < 0.05, "site {site}: {n}");
    }
}

#[test]
fn current_conservation_and_reciprocity() {
    let device = flat(16, 1e-6);
    for e in [0.05, 0.4, 1.1, 2.5] {
        let (g_src, g_drn) = green_columns(&device, e).unwrap();
        let (s1, s2) = device.self_energies(e);
        let (g1, g2) = (broadening(s1), broadening(s2));
        let from_source = g1 * g2 * g_src[device.n_sites - 1].norm_sqr();
        assert!((transmission(&g_drn, g1, g2) - from_source).abs() < 1e-9);
        assert!((g_src[device.n_sites - 1] - g_drn[0]).norm() < 1e-9);
    }
}

#[test]
fn green_columns_match_full_inverse() {
    let device = DeviceSpec::<f64>::default_nanosheet();
    let e = 0.3;
    let a = device.dense_a(e);
    let n = device.n_sites;
    let (g_src, g_drn) = green_columns(&device, e).unwrap();
    let inv: Vec<Vec<Complex64>> = (0..n).map(|k| solve_dense(&a, &unit(n, k)).unwrap()).collect();
    for i in 0..n {
        assert!((g_src[i] - inv[0][i]).norm() < 1e-9);
        assert!((g_drn[i] - inv[n - 1][i]).norm() < 1e-9);
    }
}

#[test]
fn zero_bias_carries_no_current() {
    let t = vec![0.3, 1.0, 0.7, 0.0];
    let e = vec![-0.1, 0.0, 0.05, 0.2];
    let bias = Bias { mu1: 0.07, mu2: 0.07, temperature_k: 300.0 };
    assert!(current_spectrum(&t, &e, &bias).unwrap().iter().all(|&j| j == 0.0));
}

#[test]
fn block_system_structure() {
    let device = flat(8, 1e-3);
    let grid = EnergyGrid::linspace(0.1, 0.7, 4).unwrap();
    let sys = assemble_block_system(&device, &grid).unwrap();
    assert_eq!(sys.n_qubits, 6);
    assert!((norm_sqr(&sys.b_state()) - 1.0).abs() < 1e-14);
    let blocks: Vec<ComplexMatrix<f64>> = sys.blocks.iter().map(|b| b.matrix.clone()).collect();
    let want = ComplexMatrix::block_diagonal(&blocks);
    assert!(sys.a.to_dense().unwrap().distance(&want) < 1e-10);

    // U_b†|b⟩ = |0…0⟩
    let mut b = sys.b_state();
    sys.rhs.apply_ub(&mut b, sys.n_qubits, true);
    assert!((b[0] - 1.0).norm() < 1e-12);
    assert!(b[1..].iter().all(|x| x.norm() < 1e-12));
}
