use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::{Real, C};

use super::term::OperatorTerm;

/// Largest register [`OperatorSum::to_dense`] will expand.
pub const DENSE_QUBIT_LIMIT: usize = 12;

/// Linear combination of [`OperatorTerm`]s on an `n_qubits` register.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSum<T> {
    n_qubits: usize,
    terms: Vec<OperatorTerm<T>>,
    hermitian_hint: bool,
}

impl<T: Real> OperatorSum<T> {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, terms: Vec::new(), hermitian_hint: false }
    }

    pub fn from_terms(n_qubits: usize, terms: Vec<OperatorTerm<T>>) -> Result<Self> {
        let mut sum = Self::new(n_qubits);
        for t in terms {
            sum.push(t)?;
        }
        Ok(sum)
    }

    pub fn push(&mut self, term: OperatorTerm<T>) -> Result<()> {
        if term.n_qubits() != self.n_qubits {
            return Err(Error::QubitMismatch {
                expected: self.n_qubits,
                actual: term.n_qubits(),
            });
        }
        if let Some(s) = term.shift {
            if !s.fits(self.n_qubits) {
                return Err(Error::InvalidArgument(format!(
                    "shift over qubits {}..{} does not fit {} qubits",
                    s.start,
                    s.start + s.width,
                    self.n_qubits
                )));
            }
        }
        self.terms.push(term);
        Ok(())
    }

    pub fn extend(&mut self, other: &Self) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::QubitMismatch {
                expected: self.n_qubits,
                actual: other.n_qubits,
            });
        }
        self.terms.extend_from_slice(&other.terms);
        Ok(())
    }

    pub fn with_hermitian_hint(mut self, hint: bool) -> Self {
        self.hermitian_hint = hint;
        self
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    #[inline]
    pub fn terms(&self) -> &[OperatorTerm<T>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn hermitian_hint(&self) -> bool {
        self.hermitian_hint
    }

    pub fn scaled(&self, s: C<T>) -> Self {
        Self {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|t| t.scaled(s)).collect(),
            hermitian_hint: self.hermitian_hint && s.im == T::zero(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(OperatorTerm::adjoint).collect(),
            hermitian_hint: self.hermitian_hint,
        }
    }

    /// Places the operator on the lowest qubits of an `n_total` register,
    /// tensored with identity on the qubits above.
    pub fn embed_low(&self, n_total: usize) -> Result<Self> {
        if n_total < self.n_qubits {
            return Err(Error::InvalidArgument(format!(
                "cannot embed {} qubits into {n_total}",
                self.n_qubits
            )));
        }
        Ok(Self {
            n_qubits: n_total,
            terms: self.terms.iter().map(|t| t.embed_low(n_total)).collect(),
            hermitian_hint: self.hermitian_hint,
        })
    }

    /// `out += Σ_k T_k x`, terms in index order, basis states ascending.
    pub fn apply_accumulate(&self, x: &[C<T>], out: &mut [C<T>]) {
        debug_assert_eq!(x.len(), self.dim());
        debug_assert_eq!(out.len(), self.dim());
        for term in &self.terms {
            for (j, &xj) in x.iter().enumerate() {
                if let Some((i, v)) = term.map_basis(j) {
                    out[i] += v * xj;
                }
            }
        }
    }

    /// Dense `2^n × 2^n` matrix; refused above [`DENSE_QUBIT_LIMIT`] qubits.
    pub fn to_dense(&self) -> Result<ComplexMatrix<T>> {
        if self.n_qubits > DENSE_QUBIT_LIMIT {
            return Err(Error::SizeGuard {
                n_qubits: self.n_qubits,
                limit: DENSE_QUBIT_LIMIT,
            });
        }
        let dim = self.dim();
        let mut m = ComplexMatrix::zeros(dim, dim);
        for term in &self.terms {
            for j in 0..dim {
                if let Some((i, v)) = term.map_basis(j) {
                    m[(i, j)] += v;
                }
            }
        }
        Ok(m)
    }
}

/// Dense matrix of a single term.
pub fn term_to_dense<T: Real>(term: &OperatorTerm<T>) -> Result<ComplexMatrix<T>> {
    OperatorSum::from_terms(term.n_qubits(), vec![*term])?.to_dense()
}
