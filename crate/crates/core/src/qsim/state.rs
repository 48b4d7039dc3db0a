use crate::error::{Error, Result};
use crate::scalar::{c_one, c_zero, inner, norm_sqr, Real, C};

/// Statevector over `2^n_qubits` computational basis states.
///
/// Qubit 0 is the most significant bit of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct QState<T> {
    n_qubits: usize,
    amps: Vec<C<T>>,
}

impl<T: Real> QState<T> {
    /// `|0…0⟩`.
    pub fn zero(n_qubits: usize) -> Self {
        Self::basis(n_qubits, 0)
    }

    /// Computational basis state `|index⟩`. Panics if `index >= 2^n`.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let dim = 1usize << n_qubits;
        assert!(index < dim, "basis index {index} out of range for {n_qubits} qubits");
        let mut amps = vec![c_zero(); dim];
        amps[index] = c_one();
        Self { n_qubits, amps }
    }

    /// Wraps raw amplitudes without normalizing them.
    pub fn from_amplitudes(amps: Vec<C<T>>) -> Result<Self> {
        let n_qubits = qubits_for_len(amps.len())?;
        Ok(Self { n_qubits, amps })
    }

    /// Wraps amplitudes after scaling them to unit norm.
    pub fn normalized(mut amps: Vec<C<T>>) -> Result<Self> {
        let n_qubits = qubits_for_len(amps.len())?;
        let norm = norm_sqr(&amps).sqrt();
        if !(norm > T::zero()) {
            return Err(Error::InvalidArgument("cannot normalize a zero vector".into()));
        }
        let inv = T::one() / norm;
        for a in &mut amps {
            *a = *a * inv;
        }
        Ok(Self { n_qubits, amps })
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C<T>> {
        self.amps
    }

    pub fn norm_sqr(&self) -> T {
        norm_sqr(&self.amps)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<C<T>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(inner(&self.amps, &other.amps))
    }
}

/// Number of qubits for a power-of-two length.
pub fn qubits_for_len(len: usize) -> Result<usize> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    Ok(len.trailing_zeros() as usize)
}

/// Bit mask of qubit `q` in an `n`-qubit register (qubit 0 is the MSB).
#[inline]
pub fn qubit_bit(n_qubits: usize, q: usize) -> usize {
    1usize << (n_qubits - 1 - q)
}
