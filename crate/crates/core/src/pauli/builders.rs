//! Shift-operator decompositions of the tight-binding operators `H₀`, `H₀²`,
//! `A = (E + iη)I − H₀ − D` and `A†A`.

use crate::error::{Error, Result};
use crate::qsim::{qubit_bit, ShiftRange};
use crate::scalar::{c, c_real, Real, C};

use super::string::{Pauli, PauliString};
use super::sum::OperatorSum;
use super::term::{OperatorTerm, Projector};
use super::walsh::SplitDiagonal;

/// Default relative Walsh truncation threshold.
pub const DEFAULT_REL_THRESHOLD: f64 = 1e-12;

fn check_sites(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "tight-binding decomposition needs at least 2 qubits, got {n}"
        )));
    }
    Ok(())
}

/// `I₀` on qubits `0..count`, or `None` for the empty product.
fn zero_projector(n: usize, count: usize) -> Option<Projector> {
    let mask = (0..count).fold(0, |m, q| m | qubit_bit(n, q));
    (mask != 0).then(|| Projector::new(mask, 0))
}

fn term<T: Real>(coeff: T, pauli: PauliString, shift: Option<ShiftRange>, projector: Option<Projector>) -> OperatorTerm<T> {
    OperatorTerm { coeff: c_real(coeff), pauli, shift, projector }
}

/// Open-chain hopping Hamiltonian on `n` qubits:
///
/// `t₀[2I − I^{⊗n−1}⊗X − S†(I^{⊗n−1}⊗X)S + S†(I₀^{⊗n−1}⊗X)S]`.
///
/// The last term cancels the wraparound coupling of the middle one, so the
/// dense matrix is tridiagonal `(−t₀, 2t₀, −t₀)` with zero corners.
pub fn build_h0<T: Real>(n: usize, t0: T) -> Result<OperatorSum<T>> {
    check_sites(n)?;
    let s = Some(ShiftRange::new(0, n));
    let x_last = PauliString::single(n, n - 1, Pauli::X);
    let terms = vec![
        term(T::lit(2.0) * t0, PauliString::identity(n), None, None),
        term(-t0, x_last, None, None),
        term(-t0, x_last, s, None),
        term(t0, x_last, s, zero_projector(n, n - 1)),
    ];
    Ok(OperatorSum::from_terms(n, terms)?.with_hermitian_hint(true))
}

/// Shift-form expansion of `H₀²`:
///
/// `t₀²[6I − 4 I^{⊗n−1}⊗X − 4 S†(I^{⊗n−1}⊗X)S + 4 S†(I₀^{⊗n−1}⊗X)S
///   − S†(I₀^{⊗n−1}⊗I)S + S'†((I^{⊗n−2} − I₀^{⊗n−2})⊗X)S' ⊗ I
///   + I^{⊗n−2}⊗X⊗I]`
///
/// with `S = S^{(n)}` and `S' = S^{(n−1)}` on the top `n−1` qubits. The
/// `(I − I₀)` bracket is emitted as two terms; for `n = 2` the empty
/// `I₀^{⊗0}` makes them cancel exactly.
pub fn build_h0_squared<T: Real>(n: usize, t0: T) -> Result<OperatorSum<T>> {
    check_sites(n)?;
    let t2 = t0 * t0;
    let s = Some(ShiftRange::new(0, n));
    let s_prev = Some(ShiftRange::new(0, n - 1));
    let x_last = PauliString::single(n, n - 1, Pauli::X);
    let x_second_last = PauliString::single(n, n - 2, Pauli::X);
    let id = PauliString::identity(n);
    let four = T::lit(4.0);
    // I₀^{⊗n−2} on the top n−2 qubits; empty for n = 2
    let inner_zero = zero_projector(n, n - 2).unwrap_or(Projector::new(0, 0));
    let terms = vec![
        term(T::lit(6.0) * t2, id, None, None),
        term(-four * t2, x_last, None, None),
        term(-four * t2, x_last, s, None),
        term(four * t2, x_last, s, zero_projector(n, n - 1)),
        term(-t2, id, s, zero_projector(n, n - 1)),
        term(t2, x_second_last, s_prev, None),
        term(-t2, x_second_last, s_prev, Some(inner_zero)),
        term(t2, x_second_last, None, None),
    ];
    Ok(OperatorSum::from_terms(n, terms)?.with_hermitian_hint(true))
}

/// `A = diag(Δ) − I ⊗ H₀` on an `n_qubits` register whose lowest
/// `site_qubits` qubits index lattice sites. `Δ` already contains
/// `(E + iη)` minus the potential and contact self-energies; for an
/// energy-block register each block carries its own energy.
#[derive(Debug, Clone)]
pub struct TightBindingSystem<T> {
    pub n_qubits: usize,
    pub site_qubits: usize,
    pub t0: T,
    pub delta: SplitDiagonal<T>,
    pub rel_threshold: T,
}

impl<T: Real> TightBindingSystem<T> {
    pub fn new(n_qubits: usize, site_qubits: usize, t0: T, delta: SplitDiagonal<T>, rel_threshold: T) -> Result<Self> {
        check_sites(site_qubits)?;
        if site_qubits > n_qubits {
            return Err(Error::InvalidArgument(format!(
                "{site_qubits} site qubits exceed the {n_qubits}-qubit register"
            )));
        }
        if delta.len() != 1usize << n_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1 << n_qubits,
                actual: delta.len(),
            });
        }
        Ok(Self { n_qubits, site_qubits, t0, delta, rel_threshold })
    }

    fn h0(&self) -> Result<OperatorSum<T>> {
        build_h0(self.site_qubits, self.t0)?.embed_low(self.n_qubits)
    }

    /// The operator sum of `A` and the Walsh truncation error of `Δ`.
    pub fn a_operator(&self) -> Result<(OperatorSum<T>, T)> {
        let (mut op, err) = self.delta.to_operator(self.rel_threshold)?;
        op.extend(&self.h0()?.scaled(c_real(-T::one())))?;
        Ok((op.with_hermitian_hint(false), err))
    }

    /// `A†A = H₀² − H₀Δ − Δ†H₀ + Δ†Δ`, Hermitian-flagged.
    ///
    /// Cross terms are pulled through the shifts with `S Δ = (S Δ S†) S`, so
    /// each one is a shift-conjugated `(Pauli · I/Z-string)` or projector.
    pub fn adag_a_operator(&self) -> Result<OperatorSum<T>> {
        let n = self.n_qubits;
        let thr = self.rel_threshold;
        let minus = c_real(-T::one());
        let mut out = build_h0_squared(self.site_qubits, self.t0)?.embed_low(n)?;

        let plain = self.delta.to_operator(thr)?.0;
        let plain_conj = self.delta.conj().to_operator(thr)?.0;
        let mut shifted_cache: Vec<(ShiftRange, OperatorSum<T>, OperatorSum<T>)> = Vec::new();

        for h in self.h0()?.terms() {
            let (d_terms, d_conj_terms) = match h.shift {
                None => (&plain, &plain_conj),
                Some(range) => {
                    if !shifted_cache.iter().any(|(r, _, _)| *r == range) {
                        let shifted = self.delta.shift_conjugate(range);
                        let a = shifted.to_operator(thr)?.0;
                        let b = shifted.conj().to_operator(thr)?.0;
                        shifted_cache.push((range, a, b));
                    }
                    let (_, a, b) = shifted_cache.iter().find(|(r, _, _)| *r == range).unwrap();
                    (a, b)
                }
            };
            let core = OperatorTerm { shift: None, ..*h };
            for m in d_terms.terms() {
                if let Some(p) = core.mul_unshifted(m) {
                    out.push(OperatorTerm { shift: h.shift, ..p.scaled(minus) })?;
                }
            }
            for m in d_conj_terms.terms() {
                if let Some(p) = m.mul_unshifted(&core) {
                    out.push(OperatorTerm { shift: h.shift, ..p.scaled(minus) })?;
                }
            }
        }

        let gram = self.delta.conj().mul(&self.delta).to_operator(thr)?.0;
        out.extend(&gram)?;
        Ok(out.with_hermitian_hint(true))
    }
}

fn energy_delta<T: Real>(energy: T, eta: T, d: &SplitDiagonal<T>, allow_zero_eta: bool) -> Result<SplitDiagonal<T>> {
    let ok = if allow_zero_eta { eta >= T::zero() } else { eta > T::zero() };
    if !ok {
        return Err(Error::InvalidArgument(format!("eta must be positive, got {eta}")));
    }
    let z: C<T> = c(energy, eta);
    SplitDiagonal::new(
        d.smooth.iter().map(|&x| z - x).collect(),
        d.spikes.iter().map(|&(k, v)| (k, -v)).collect(),
    )
}

/// `(E + iη)I − h0 − D` for an arbitrary `h0` sum; the spikes of `d`
/// (contact self-energies) become exact projector terms.
pub fn build_a<T: Real>(
    n: usize,
    energy: T,
    eta: T,
    h0: &OperatorSum<T>,
    d: &SplitDiagonal<T>,
    rel_threshold: T,
) -> Result<OperatorSum<T>> {
    if h0.n_qubits() != n || d.len() != 1usize << n {
        return Err(Error::QubitMismatch { expected: n, actual: h0.n_qubits() });
    }
    let delta = energy_delta(energy, eta, d, false)?;
    let (mut op, _) = delta.to_operator(rel_threshold)?;
    op.extend(&h0.scaled(c_real(-T::one())))?;
    Ok(op.with_hermitian_hint(false))
}

/// `A†A` for `A = (E + iη)I − H₀(t₀) − D`; see
/// [`TightBindingSystem::adag_a_operator`]. Unlike [`build_a`], `η = 0` is
/// accepted since the Gram operator stays well defined.
pub fn build_adag_a<T: Real>(
    n: usize,
    energy: T,
    eta: T,
    t0: T,
    d: &SplitDiagonal<T>,
    rel_threshold: T,
) -> Result<OperatorSum<T>> {
    let delta = energy_delta(energy, eta, d, true)?;
    TightBindingSystem::new(n, n, t0, delta, rel_threshold)?.adag_a_operator()
}
