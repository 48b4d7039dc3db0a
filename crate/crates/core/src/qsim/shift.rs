use crate::scalar::{c_zero, Real, C};

/// Contiguous qubit range `[start, start + width)` on which a cyclic shift
/// `S|i⟩ = |(i + 1) mod 2^width⟩` acts; `start` is the most significant
/// qubit of the range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShiftRange {
    pub start: usize,
    pub width: usize,
}

impl ShiftRange {
    pub fn new(start: usize, width: usize) -> Self {
        Self { start, width }
    }

    pub fn fits(&self, n_qubits: usize) -> bool {
        self.width >= 1 && self.start + self.width <= n_qubits
    }

    #[inline]
    fn low_bit(&self, n_qubits: usize) -> usize {
        n_qubits - self.start - self.width
    }

    /// Image of basis index `i` under `S` (or `S†`).
    #[inline]
    pub fn map(&self, n_qubits: usize, i: usize, adjoint: bool) -> usize {
        let lo = self.low_bit(n_qubits);
        let mask = (1usize << self.width) - 1;
        let field = (i >> lo) & mask;
        let shifted = if adjoint {
            field.wrapping_sub(1) & mask
        } else {
            (field + 1) & mask
        };
        (i & !(mask << lo)) | (shifted << lo)
    }

    /// Shifts this range by `offset` qubits, for embedding into a larger
    /// register whose extra qubits sit above it.
    pub fn offset(self, offset: usize) -> Self {
        Self { start: self.start + offset, width: self.width }
    }
}

/// Applies the shift permutation to `amps` in place.
pub fn apply_shift_in_place<T: Real>(amps: &mut [C<T>], n_qubits: usize, range: ShiftRange, adjoint: bool) {
    let mut out = vec![c_zero(); amps.len()];
    for (i, &a) in amps.iter().enumerate() {
        out[range.map(n_qubits, i, adjoint)] = a;
    }
    amps.copy_from_slice(&out);
}
