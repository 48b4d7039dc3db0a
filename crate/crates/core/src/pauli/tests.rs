use super::*;
use crate::linalg::ComplexMatrix;
use crate::qsim::{qubit_bit, ShiftRange};
use crate::scalar::{c, c_real, c_zero, C};

fn dense_shift(n: usize, width: usize) -> ComplexMatrix<f64> {
    let dim = 1 << n;
    let range = ShiftRange::new(0, width);
    let mut m = ComplexMatrix::zeros(dim, dim);
    for j in 0..dim {
        m[(range.map(n, j, false), j)] = c_real(1.0);
    }
    m
}

fn dense_dyad(dim: usize, i: usize, j: usize) -> ComplexMatrix<f64> {
    let mut m = ComplexMatrix::zeros(dim, dim);
    m[(i, j)] = c_real(1.0);
    m
}

fn tridiagonal(n: usize, t0: f64) -> ComplexMatrix<f64> {
    let dim = 1 << n;
    let mut m = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = c_real(2.0 * t0);
        if i + 1 < dim {
            m[(i, i + 1)] = c_real(-t0);
            m[(i + 1, i)] = c_real(-t0);
        }
    }
    m
}

fn x_last(n: usize) -> ComplexMatrix<f64> {
    term_to_dense(&OperatorTerm::new(c_real(1.0), PauliString::single(n, n - 1, Pauli::X))).unwrap()
}

/// `I₀^{⊗count} ⊗ I` on the top `count` qubits.
fn zero_proj(n: usize, count: usize) -> ComplexMatrix<f64> {
    let mask = (0..count).fold(0, |m, q| m | qubit_bit(n, q));
    let dim = 1 << n;
    let d: Vec<C<f64>> = (0..dim).map(|j| if j & mask == 0 { c_real(1.0) } else { c_zero() }).collect();
    ComplexMatrix::from_diagonal(&d)
}

fn conj_shift(s: &ComplexMatrix<f64>, m: &ComplexMatrix<f64>) -> ComplexMatrix<f64> {
    &(&s.adjoint() * m) * s
}

fn lcg(seed: &mut u64) -> f64 {
    *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    ((*seed >> 11) as f64) / ((1u64 << 53) as f64)
}

#[test]
fn walsh_examples() {
    let d = [c_real(1.0), c_real(0.0)];
    let dec = decompose_diagonal(&d, 0.0).unwrap();
    assert_eq!(dec.op.len(), 2);
    assert_eq!(dec.coefficients, vec![c_real(0.5), c_real(0.5)]);

    let d: Vec<C<f64>> = vec![c(0.3, -1.2); 8];
    let dec = decompose_diagonal(&d, 0.0).unwrap();
    assert_eq!(dec.op.len(), 1);
    assert!(dec.op.terms()[0].pauli.is_identity());
    assert_eq!(dec.op.terms()[0].coeff, c(0.3, -1.2));

    let d: Vec<C<f64>> = (0..4).map(|i| c_real(i as f64)).collect();
    let dec = decompose_diagonal(&d, 0.0).unwrap();
    let labels: Vec<(String, f64)> =
        dec.op.terms().iter().map(|t| (t.pauli.to_string(), t.coeff.re)).collect();
    assert_eq!(
        labels,
        vec![("II".to_string(), 1.5), ("IZ".to_string(), -0.5), ("ZI".to_string(), -1.0)]
    );
    assert_eq!(dec.coefficients[3], c_zero());
    assert_eq!(dec.truncation_error, 0.0);
}

#[test]
fn walsh_rejects_bad_input() {
    let d = vec![c_real(1.0); 3];
    assert!(decompose_diagonal(&d, 0.0).is_err());
    let d = vec![c_real(1.0); 4];
    assert!(decompose_diagonal(&d, 1.0).is_err());
    assert!(decompose_diagonal(&d, -0.1).is_err());
}

#[test]
fn walsh_truncation_reports_error() {
    let d: Vec<C<f64>> = (0..16).map(|i| c_real(1.0 + 1e-3 * ((i * 7) % 5) as f64)).collect();
    let dec = decompose_diagonal(&d, 0.5).unwrap();
    assert_eq!(dec.op.len(), 1);
    assert!(dec.truncation_error > 0.0);
    assert!(dec.truncation_error <= dec.truncation_bound + 1e-15);
}

#[test]
fn shift_conjugate_examples() {
    let d: Vec<C<f64>> = (0..4).map(|i| c_real(i as f64)).collect();
    let s = shift_conjugate_diagonal(&d).unwrap();
    assert_eq!(s, vec![c_real(3.0), c_real(0.0), c_real(1.0), c_real(2.0)]);
    let mut cur = d.clone();
    for _ in 0..4 {
        cur = shift_conjugate_diagonal(&cur).unwrap();
    }
    assert_eq!(cur, d);
    assert!(shift_conjugate_diagonal(&d[..3]).is_err());
}

#[test]
fn shift_conjugate_matches_dense() {
    let n = 3;
    let d: Vec<C<f64>> = (0..8).map(|i| c(i as f64, -(i as f64) * 0.5)).collect();
    let s = dense_shift(n, n);
    let want = &(&s * &ComplexMatrix::from_diagonal(&d)) * &s.adjoint();
    let got = ComplexMatrix::from_diagonal(&shift_conjugate_diagonal(&d).unwrap());
    assert_eq!(got.distance(&want), 0.0);
}

#[test]
fn h0_n2_dense() {
    let got = build_h0(2, 1.0).unwrap().to_dense().unwrap();
    let want = ComplexMatrix::from_real_rows(&[
        &[2.0, -1.0, 0.0, 0.0],
        &[-1.0, 2.0, -1.0, 0.0],
        &[0.0, -1.0, 2.0, -1.0],
        &[0.0, 0.0, -1.0, 2.0],
    ]);
    assert_eq!(got.distance(&want), 0.0);
}

#[test]
fn h0_open_chain_and_hermitian() {
    for n in 2..=6 {
        let t0 = 0.37;
        let h = build_h0(n, t0).unwrap();
        assert_eq!(h.len(), 4);
        let m = h.to_dense().unwrap();
        let last = (1 << n) - 1;
        assert_eq!(m[(0, last)], c_zero());
        assert_eq!(m[(last, 0)], c_zero());
        assert_eq!(m.distance(&m.adjoint()), 0.0);
        assert!(m.distance(&tridiagonal(n, t0)) < 1e-14);
    }
    assert!(build_h0::<f64>(1, 1.0).is_err());
}

#[test]
fn h0_squared_n2_dense() {
    let got = build_h0_squared(2, 1.0).unwrap().to_dense().unwrap();
    let want = ComplexMatrix::from_real_rows(&[
        &[5.0, -4.0, 1.0, 0.0],
        &[-4.0, 6.0, -4.0, 1.0],
        &[1.0, -4.0, 6.0, -4.0],
        &[0.0, 1.0, -4.0, 5.0],
    ]);
    assert!(got.distance(&want) < 1e-14);
}

#[test]
fn h0_squared_matches_product() {
    for n in 2..=6 {
        let h = build_h0(n, 0.9).unwrap().to_dense().unwrap();
        let h2 = build_h0_squared(n, 0.9).unwrap().to_dense().unwrap();
        let want = &h * &h;
        assert!(h2.distance(&want) < 1e-10 * want.frobenius_norm(), "n={n}");
    }
}

#[test]
fn h0_squared_quadratic_in_t0() {
    let a = build_h0_squared(4, 0.6).unwrap().to_dense().unwrap();
    let b = build_h0_squared(4, 1.2).unwrap().to_dense().unwrap();
    assert!(b.distance(&a.scale(c_real(4.0))) < 1e-13);
}

#[test]
fn recursive_shift_identity() {
    for n in 2..=6 {
        let s = dense_shift(n, n);
        let lhs = conj_shift(&s, &x_last(n));
        let s_prev = dense_shift(n - 1, n - 1);
        let rhs = &s_prev.kron(&dense_dyad(2, 0, 1)) + &s_prev.adjoint().kron(&dense_dyad(2, 1, 0));
        assert!(lhs.distance(&rhs) < 1e-12, "n={n}");
    }
}

#[test]
fn wraparound_shift_identity() {
    for n in 2..=6 {
        let s = dense_shift(n, n);
        let lhs = conj_shift(&s, &(&zero_proj(n, n - 1) * &x_last(n)));
        let last = (1 << n) - 1;
        let rhs = &dense_dyad(1 << n, 0, last) + &dense_dyad(1 << n, last, 0);
        assert!(lhs.distance(&rhs) < 1e-12, "n={n}");
    }
}

#[test]
fn j1_plus_j2_identity() {
    for n in 3..=6 {
        let s = dense_shift(n, n);
        let x = x_last(n);
        let inner = conj_shift(&s, &(&x - &(&zero_proj(n, n - 1) * &x)));
        let j1 = &x * &inner;
        let j2 = &inner * &x;
        let lhs = &j1 + &j2;

        let m = n - 1;
        let sp = dense_shift(m, m);
        let xm = x_last(m);
        let bracket = &(&xm + &conj_shift(&sp, &xm)) - &conj_shift(&sp, &(&zero_proj(m, m - 1) * &xm));
        let rhs = bracket.kron(&ComplexMatrix::identity(2));
        assert!(lhs.distance(&rhs) < 1e-12, "n={n}");
    }
}

#[test]
fn to_dense_examples() {
    let z = term_to_dense(&OperatorTerm::<f64>::new(c_real(1.0), PauliString::single(1, 0, Pauli::Z))).unwrap();
    assert_eq!(z.distance(&ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])), 0.0);
    for n in 1..=4 {
        let t = OperatorTerm::<f64>::identity(n, c_real(1.0)).with_shift(ShiftRange::new(0, n));
        assert_eq!(term_to_dense(&t).unwrap().distance(&ComplexMatrix::identity(1 << n)), 0.0);
    }
    let dy = term_to_dense(&OperatorTerm::<f64>::dyad(2, 0, 3, c_real(1.0))).unwrap();
    assert_eq!(dy.distance(&dense_dyad(4, 0, 3)), 0.0);
    assert!(OperatorSum::<f64>::new(13).to_dense().is_err());
}

#[test]
fn term_adjoint_matches_dense() {
    let n = 3;
    let terms = [
        OperatorTerm::new(c(0.2, 0.7), "XYZ".parse().unwrap()),
        OperatorTerm::new(c(-0.4, 0.1), "IXY".parse().unwrap())
            .with_projector(Projector::new(0b110, 0b010))
            .with_shift(ShiftRange::new(0, 3)),
        OperatorTerm::dyad(n, 5, 2, c(1.0, -2.0)).with_shift(ShiftRange::new(1, 2)),
    ];
    for t in terms {
        let m = term_to_dense(&t).unwrap();
        let a = term_to_dense(&t.adjoint()).unwrap();
        assert!(a.distance(&m.adjoint()) < 1e-15);
    }
}

#[test]
fn term_products_match_dense() {
    let a = OperatorTerm::new(c(0.5, 0.1), "XZY".parse().unwrap()).with_projector(Projector::new(0b100, 0b100));
    let b = OperatorTerm::new(c(-0.3, 1.0), "YIX".parse().unwrap()).with_projector(Projector::new(0b011, 0b001));
    let p = a.mul_unshifted(&b).unwrap();
    let want = &term_to_dense(&a).unwrap() * &term_to_dense(&b).unwrap();
    assert!(term_to_dense(&p).unwrap().distance(&want) < 1e-15);
    // orthogonal projectors annihilate
    let e = OperatorTerm::<f64>::dyad(2, 1, 1, c_real(1.0));
    let f = OperatorTerm::<f64>::dyad(2, 2, 2, c_real(1.0));
    assert!(e.mul_unshifted(&f).is_none());
}

#[test]
fn embed_low_is_identity_kron() {
    let h = build_h0(2, 1.0).unwrap();
    let big = h.embed_low(4).unwrap().to_dense().unwrap();
    let want = ComplexMatrix::identity(4).kron(&h.to_dense().unwrap());
    assert_eq!(big.distance(&want), 0.0);
}

fn random_split(n: usize, seed: &mut u64) -> SplitDiagonal<f64> {
    let dim = 1 << n;
    let mut d: Vec<C<f64>> = (0..dim).map(|i| c_real(0.2 * (i as f64 / dim as f64 * 3.0).sin() + 0.05 * lcg(seed))).collect();
    d[0] += c(-0.3 * lcg(seed), -0.5 * lcg(seed));
    d[dim - 1] += c(-0.3 * lcg(seed), -0.5 * lcg(seed));
    if dim >= 4 {
        SplitDiagonal::with_end_spikes(&d).unwrap()
    } else {
        SplitDiagonal::smooth_only(d).unwrap()
    }
}

fn dense_a(n: usize, e: f64, eta: f64, t0: f64, d: &SplitDiagonal<f64>) -> ComplexMatrix<f64> {
    let z = c(e, eta);
    let diag: Vec<C<f64>> = d.full().iter().map(|x| z - x).collect();
    &ComplexMatrix::from_diagonal(&diag) - &tridiagonal(n, t0)
}

#[test]
fn build_a_matches_dense() {
    let mut seed = 7;
    for n in 2..=6 {
        let d = random_split(n, &mut seed);
        let h0 = build_h0(n, 0.8).unwrap();
        let a = build_a(n, -0.05, 1e-3, &h0, &d, DEFAULT_REL_THRESHOLD).unwrap();
        let want = dense_a(n, -0.05, 1e-3, 0.8, &d);
        assert!(a.to_dense().unwrap().distance(&want) < 1e-10, "n={n}");
    }
}

#[test]
fn build_a_degenerate_and_errors() {
    let n = 2;
    let zero = OperatorSum::<f64>::new(n);
    let d = SplitDiagonal::smooth_only(vec![c_zero(); 4]).unwrap();
    let a = build_a(n, 0.3, 0.1, &zero, &d, 0.0).unwrap().to_dense().unwrap();
    assert!(a.distance(&ComplexMatrix::identity(4).scale(c(0.3, 0.1))) < 1e-15);
    assert!(build_a(n, 0.3, 0.0, &zero, &d, 0.0).is_err());
    assert!(build_a(n, 0.3, -1.0, &zero, &d, 0.0).is_err());
}

#[test]
fn build_adag_a_matches_gram() {
    let mut seed = 11;
    for n in 2..=6 {
        let d = random_split(n, &mut seed);
        let op = build_adag_a(n, 0.1, 1e-2, 0.8, &d, DEFAULT_REL_THRESHOLD).unwrap();
        assert!(op.hermitian_hint());
        let a = dense_a(n, 0.1, 1e-2, 0.8, &d);
        let want = &a.adjoint() * &a;
        let got = op.to_dense().unwrap();
        assert!(got.distance(&want) < 1e-10 * want.frobenius_norm(), "n={n}");
    }
}

#[test]
fn build_adag_a_energy_only() {
    // D = 0, H₀ = 0 (t₀ = 0), η = 0 → E² I
    let d = SplitDiagonal::smooth_only(vec![c_zero(); 8]).unwrap();
    let got = build_adag_a(3, 1.7, 0.0, 0.0, &d, 0.0).unwrap().to_dense().unwrap();
    assert!(got.distance(&ComplexMatrix::identity(8).scale(c_real(1.7 * 1.7))) < 1e-14);
}

#[test]
fn block_register_system_is_block_diagonal() {
    // 2 site qubits inside a 4-qubit register, per-block diagonals differ
    let mut seed = 3;
    let site = 2;
    let n = 4;
    let blocks: Vec<SplitDiagonal<f64>> = (0..4).map(|_| random_split(site, &mut seed)).collect();
    let mut smooth = Vec::new();
    for b in &blocks {
        smooth.extend(b.full());
    }
    let delta = SplitDiagonal::smooth_only(smooth.iter().map(|x| c(0.2, 0.01) - x).collect()).unwrap();
    let sys = TightBindingSystem::new(n, site, 0.5, delta, DEFAULT_REL_THRESHOLD).unwrap();
    let a = sys.a_operator().unwrap().0.to_dense().unwrap();
    let dense_blocks: Vec<_> = blocks.iter().map(|b| dense_a(site, 0.2, 0.01, 0.5, b)).collect();
    let want = ComplexMatrix::block_diagonal(&dense_blocks);
    assert!(a.distance(&want) < 1e-12);
    let gram = sys.adag_a_operator().unwrap().to_dense().unwrap();
    assert!(gram.distance(&(&want.adjoint() * &want)) < 1e-12);
}

#[test]
fn sparse_matches_dense() {
    let mut seed = 5;
    let d = random_split(4, &mut seed);
    let op = build_adag_a(4, 0.1, 1e-3, 0.6, &d, 0.0).unwrap();
    let sp = SparseOperator::compile(&op);
    let x: Vec<C<f64>> = (0..16).map(|_| c(lcg(&mut seed) - 0.5, lcg(&mut seed) - 0.5)).collect();
    let mut want = vec![c_zero(); 16];
    op.apply_accumulate(&x, &mut want);
    let got = sp.apply_vec(&x);
    for (g, w) in got.iter().zip(&want) {
        assert!((g - w).norm() < 1e-13);
    }
    let adj = sp.adjoint();
    let dense = op.to_dense().unwrap().adjoint();
    for i in 0..16 {
        for (j, v) in adj.row(i) {
            assert!((v - dense[(i, j)]).norm() < 1e-13);
        }
    }
    assert_eq!(SparseOperator::compile(&op), sp);
}
