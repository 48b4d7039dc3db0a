use crate::scalar::{c_zero, Real, C};

use super::sum::OperatorSum;

/// CSR matrix compiled from an [`OperatorSum`] by applying every term to
/// every basis state. Entries are merged in term order, so the result is
/// deterministic; applying it costs `O(nnz)` instead of `O(terms · 2^n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator<T> {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<C<T>>,
}

impl<T: Real> SparseOperator<T> {
    pub fn compile(op: &OperatorSum<T>) -> Self {
        let dim = op.dim();
        let mut triplets: Vec<(usize, usize, C<T>)> = Vec::new();
        for term in op.terms() {
            for j in 0..dim {
                if let Some((i, v)) = term.map_basis(j) {
                    triplets.push((i, j, v));
                }
            }
        }
        Self::from_triplets(dim, triplets)
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed in
    /// input order and exact zeros dropped.
    pub fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, C<T>)>) -> Self {
        triplets.sort_by_key(|&(i, j, _)| (i, j));
        let mut row_ptr = vec![0usize; dim + 1];
        let mut cols = Vec::new();
        let mut values = Vec::new();
        let mut k = 0;
        while k < triplets.len() {
            let (i, j, _) = triplets[k];
            let mut acc = c_zero();
            while k < triplets.len() && triplets[k].0 == i && triplets[k].1 == j {
                acc += triplets[k].2;
                k += 1;
            }
            if acc != c_zero() {
                cols.push(j);
                values.push(acc);
                row_ptr[i + 1] += 1;
            }
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self { dim, row_ptr, cols, values }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn adjoint(&self) -> Self {
        let mut triplets = Vec::with_capacity(self.nnz());
        for i in 0..self.dim {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                triplets.push((self.cols[k], i, self.values[k].conj()));
            }
        }
        Self::from_triplets(self.dim, triplets)
    }

    /// `out = M x`.
    pub fn apply(&self, x: &[C<T>], out: &mut [C<T>]) {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(out.len(), self.dim);
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = c_zero();
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.values[k] * x[self.cols[k]];
            }
            *o = acc;
        }
    }

    pub fn apply_vec(&self, x: &[C<T>]) -> Vec<C<T>> {
        let mut out = vec![c_zero(); self.dim];
        self.apply(x, &mut out);
        out
    }

    /// Entries of row `i` as `(col, value)` pairs.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, C<T>)> + '_ {
        (self.row_ptr[i]..self.row_ptr[i + 1]).map(move |k| (self.cols[k], self.values[k]))
    }
}
