//! Walsh–Hadamard decomposition of diagonal operators into `I/Z` strings.

use crate::error::{Error, Result};
use crate::qsim::{qubits_for_len, ShiftRange};
use crate::scalar::{c_zero, Real, C};

use super::string::PauliString;
use super::sum::OperatorSum;
use super::term::OperatorTerm;

/// Unnormalized in-place fast Walsh–Hadamard transform.
pub fn fwht_in_place<T: Real>(data: &mut [C<T>]) {
    let n = data.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (data[i], data[i + h]);
                data[i] = a + b;
                data[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Output of [`decompose_diagonal`].
#[derive(Debug, Clone)]
pub struct DiagonalDecomposition<T> {
    /// Retained `c_s · Z^s` terms, `s` ascending.
    pub op: OperatorSum<T>,
    /// All `2^n` Walsh coefficients, indexed by the `Z` mask `s`.
    pub coefficients: Vec<C<T>>,
    /// `‖reconstruction − d‖_∞`.
    pub truncation_error: T,
    /// `Σ |c_s|` over discarded coefficients; an upper bound on
    /// `truncation_error` that, unlike it, is monotone in the threshold.
    pub truncation_bound: T,
}

/// Expands `diag(d)` as `Σ_s c_s Z^s` with
/// `c_s = 2^{-n} Σ_i d_i (-1)^{|s ∧ i|}`, dropping coefficients below
/// `rel_threshold · max_s |c_s|` and exact zeros.
pub fn decompose_diagonal<T: Real>(d: &[C<T>], rel_threshold: T) -> Result<DiagonalDecomposition<T>> {
    let n = qubits_for_len(d.len())?;
    if !(rel_threshold >= T::zero() && rel_threshold < T::one()) {
        return Err(Error::InvalidArgument(format!(
            "relative threshold {rel_threshold} outside [0, 1)"
        )));
    }
    let mut coefficients = d.to_vec();
    fwht_in_place(&mut coefficients);
    let inv = T::one() / T::from_usize_lossy(d.len());
    for x in &mut coefficients {
        *x = *x * inv;
    }
    let cutoff = rel_threshold * coefficients.iter().map(|x| x.norm()).fold(T::zero(), T::max);

    let mut op = OperatorSum::new(n);
    let mut kept = vec![c_zero(); d.len()];
    let mut truncation_bound = T::zero();
    for (s, &cs) in coefficients.iter().enumerate() {
        if cs == c_zero() {
            continue;
        }
        if cs.norm() < cutoff {
            truncation_bound += cs.norm();
            continue;
        }
        kept[s] = cs;
        op.push(OperatorTerm::new(cs, PauliString::z_string(n, s)))?;
    }
    fwht_in_place(&mut kept);
    let truncation_error = kept
        .iter()
        .zip(d)
        .map(|(r, x)| (r - x).norm())
        .fold(T::zero(), T::max);
    Ok(DiagonalDecomposition {
        op: op.with_hermitian_hint(d.iter().all(|x| x.im == T::zero())),
        coefficients,
        truncation_error,
        truncation_bound,
    })
}

/// Diagonal of `S D S†` for the full-register shift: `d'_j = d_{(j−1) mod N}`.
pub fn shift_conjugate_diagonal<T: Real>(d: &[C<T>]) -> Result<Vec<C<T>>> {
    let n = qubits_for_len(d.len())?;
    Ok(shift_conjugate_diagonal_range(d, n, ShiftRange::new(0, n)))
}

/// Diagonal of `S D S†` for a shift on `range`: entry `j` moves to `S(j)`.
pub fn shift_conjugate_diagonal_range<T: Real>(d: &[C<T>], n_qubits: usize, range: ShiftRange) -> Vec<C<T>> {
    let mut out = vec![c_zero(); d.len()];
    for (j, &v) in d.iter().enumerate() {
        out[range.map(n_qubits, j, false)] = v;
    }
    out
}

/// A diagonal split into a smooth part, expanded in Walsh strings, and a
/// few isolated entries ("spikes") carried as exact `|k⟩⟨k|` projectors.
/// The represented diagonal is `smooth + Σ spikes`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitDiagonal<T> {
    pub smooth: Vec<C<T>>,
    pub spikes: Vec<(usize, C<T>)>,
}

impl<T: Real> SplitDiagonal<T> {
    pub fn new(smooth: Vec<C<T>>, spikes: Vec<(usize, C<T>)>) -> Result<Self> {
        qubits_for_len(smooth.len())?;
        if let Some(&(k, _)) = spikes.iter().find(|(k, _)| *k >= smooth.len()) {
            return Err(Error::InvalidArgument(format!(
                "spike index {k} out of range for diagonal of length {}",
                smooth.len()
            )));
        }
        Ok(Self { smooth, spikes })
    }

    pub fn smooth_only(smooth: Vec<C<T>>) -> Result<Self> {
        Self::new(smooth, Vec::new())
    }

    /// Splits a full diagonal so that its two end entries (the contact
    /// sites) become spikes; the smooth part copies their inner neighbours.
    pub fn with_end_spikes(d: &[C<T>]) -> Result<Self> {
        let len = d.len();
        qubits_for_len(len)?;
        if len < 4 {
            return Err(Error::InvalidArgument("need at least 4 sites to split end spikes".into()));
        }
        let mut smooth = d.to_vec();
        smooth[0] = d[1];
        smooth[len - 1] = d[len - 2];
        let spikes = vec![(0, d[0] - d[1]), (len - 1, d[len - 1] - d[len - 2])];
        Self::new(smooth, spikes)
    }

    pub fn len(&self) -> usize {
        self.smooth.len()
    }

    pub fn is_empty(&self) -> bool {
        self.smooth.is_empty()
    }

    pub fn n_qubits(&self) -> usize {
        self.smooth.len().trailing_zeros() as usize
    }

    /// The represented diagonal.
    pub fn full(&self) -> Vec<C<T>> {
        let mut d = self.smooth.clone();
        for &(k, v) in &self.spikes {
            d[k] += v;
        }
        d
    }

    pub fn conj(&self) -> Self {
        Self {
            smooth: self.smooth.iter().map(|x| x.conj()).collect(),
            spikes: self.spikes.iter().map(|&(k, v)| (k, v.conj())).collect(),
        }
    }

    pub fn scaled(&self, s: C<T>) -> Self {
        Self {
            smooth: self.smooth.iter().map(|&x| x * s).collect(),
            spikes: self.spikes.iter().map(|&(k, v)| (k, v * s)).collect(),
        }
    }

    /// Elementwise product; spike entries absorb every cross term.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.len(), rhs.len());
        let smooth: Vec<_> = self.smooth.iter().zip(&rhs.smooth).map(|(a, b)| a * b).collect();
        let (fa, fb) = (self.full(), rhs.full());
        let mut indices: Vec<usize> = self.spikes.iter().chain(&rhs.spikes).map(|&(k, _)| k).collect();
        indices.sort_unstable();
        indices.dedup();
        let spikes = indices.into_iter().map(|k| (k, fa[k] * fb[k] - smooth[k])).collect();
        Self { smooth, spikes }
    }

    /// `S D S†` for a shift on `range`.
    pub fn shift_conjugate(&self, range: ShiftRange) -> Self {
        let n = self.n_qubits();
        Self {
            smooth: shift_conjugate_diagonal_range(&self.smooth, n, range),
            spikes: self.spikes.iter().map(|&(k, v)| (range.map(n, k, false), v)).collect(),
        }
    }

    /// Walsh terms of the smooth part followed by one projector per spike.
    /// Returns the operator and the smooth part's truncation error.
    pub fn to_operator(&self, rel_threshold: T) -> Result<(OperatorSum<T>, T)> {
        let n = self.n_qubits();
        let dec = decompose_diagonal(&self.smooth, rel_threshold)?;
        let mut op = dec.op;
        for &(k, v) in &self.spikes {
            op.push(OperatorTerm::dyad(n, k, k, v))?;
        }
        let hermitian = self.full().iter().all(|x| x.im == T::zero());
        Ok((op.with_hermitian_hint(hermitian), dec.truncation_error))
    }
}
