use crate::qsim::ShiftRange;
use crate::scalar::{Real, C};

use super::string::{full_mask, i_pow, PauliString};

/// Computational-basis projector on a subset of qubits: keeps `|j⟩` iff
/// `j & mask == value`. `I₀^{⊗k}` factors and full-register dyads are both
/// projectors of this form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Projector {
    pub mask: usize,
    pub value: usize,
}

impl Projector {
    pub fn new(mask: usize, value: usize) -> Self {
        debug_assert_eq!(value & !mask, 0);
        Self { mask, value: value & mask }
    }

    /// `|index⟩⟨index|` on the whole register.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        Self::new(full_mask(n_qubits), index)
    }

    #[inline]
    pub fn accepts(&self, j: usize) -> bool {
        j & self.mask == self.value
    }

    /// `Π_a Π_b`, or `None` when the two are orthogonal.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let overlap = self.mask & other.mask;
        if self.value & overlap != other.value & overlap {
            return None;
        }
        Some(Self {
            mask: self.mask | other.mask,
            value: self.value | other.value,
        })
    }

    /// `P† Π P` for a Pauli with bit-flip mask `x`.
    #[inline]
    pub fn conjugate_by_flips(&self, x: usize) -> Self {
        Self {
            mask: self.mask,
            value: self.value ^ (x & self.mask),
        }
    }
}

/// One term of an [`OperatorSum`](super::OperatorSum):
/// `coeff · S† · P · Π · S`, where the shift `S` and the projector `Π` are
/// optional. Applied right to left: shift, project, Pauli, unshift.
///
/// A dyad `|i⟩⟨j|` is the special case `X^{i⊕j} · Π_{|j⟩}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorTerm<T> {
    pub coeff: C<T>,
    pub pauli: PauliString,
    pub shift: Option<ShiftRange>,
    pub projector: Option<Projector>,
}

impl<T: Real> OperatorTerm<T> {
    pub fn new(coeff: C<T>, pauli: PauliString) -> Self {
        Self { coeff, pauli, shift: None, projector: None }
    }

    pub fn identity(n_qubits: usize, coeff: C<T>) -> Self {
        Self::new(coeff, PauliString::identity(n_qubits))
    }

    /// `coeff · |i⟩⟨j|`.
    pub fn dyad(n_qubits: usize, i: usize, j: usize, coeff: C<T>) -> Self {
        Self {
            coeff,
            pauli: PauliString::from_masks(n_qubits, i ^ j, 0),
            shift: None,
            projector: Some(Projector::basis(n_qubits, j)),
        }
    }

    pub fn with_shift(mut self, shift: ShiftRange) -> Self {
        self.shift = Some(shift);
        self
    }

    pub fn with_projector(mut self, projector: Projector) -> Self {
        self.projector = Some(projector);
        self
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.pauli.n_qubits()
    }

    /// Image of basis state `|j⟩`: `Some((i, value))` with `T|j⟩ = value·|i⟩`,
    /// or `None` when the projector annihilates it.
    #[inline]
    pub fn map_basis(&self, j: usize) -> Option<(usize, C<T>)> {
        let n = self.n_qubits();
        let j1 = match self.shift {
            Some(s) => s.map(n, j, false),
            None => j,
        };
        if let Some(p) = self.projector {
            if !p.accepts(j1) {
                return None;
            }
        }
        let (j2, phase) = self.pauli.act(j1);
        let i = match self.shift {
            Some(s) => s.map(n, j2, true),
            None => j2,
        };
        Some((i, self.coeff * i_pow::<T>(phase)))
    }

    pub fn adjoint(&self) -> Self {
        // (c S† P Π S)† = c̄ S† Π P S = c̄ S† P (P Π P) S
        Self {
            coeff: self.coeff.conj(),
            pauli: self.pauli,
            shift: self.shift,
            projector: self.projector.map(|p| p.conjugate_by_flips(self.pauli.x_mask())),
        }
    }

    pub fn scaled(mut self, s: C<T>) -> Self {
        self.coeff = self.coeff * s;
        self
    }

    /// Product of two unshifted terms, `None` if it vanishes identically.
    pub fn mul_unshifted(&self, rhs: &Self) -> Option<Self> {
        assert!(
            self.shift.is_none() && rhs.shift.is_none(),
            "mul_unshifted called on shift-conjugated terms"
        );
        // (c1 P1 Π1)(c2 P2 Π2) = c1 c2 P1 P2 (P2† Π1 P2) Π2
        let moved = self.projector.map(|p| p.conjugate_by_flips(rhs.pauli.x_mask()));
        let projector = match (moved, rhs.projector) {
            (Some(a), Some(b)) => Some(a.intersect(&b)?),
            (a, b) => a.or(b),
        };
        let (k, pauli) = self.pauli.mul(&rhs.pauli);
        Some(Self {
            coeff: self.coeff * rhs.coeff * i_pow::<T>(k),
            pauli,
            shift: None,
            projector,
        })
    }

    /// Same term placed on the lowest `n_qubits` of an `n_total` register.
    pub fn embed_low(&self, n_total: usize) -> Self {
        let offset = n_total - self.n_qubits();
        Self {
            coeff: self.coeff,
            pauli: self.pauli.embed_low(n_total),
            shift: self.shift.map(|s| s.offset(offset)),
            projector: self.projector,
        }
    }

    pub fn is_plain_identity(&self) -> bool {
        self.pauli.is_identity() && self.shift.is_none() && self.projector.is_none()
    }
}
