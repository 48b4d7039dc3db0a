//! Operators as sums of (optionally shift-conjugated, projected) Pauli
//! strings, plus the tight-binding decompositions built from them.

mod builders;
mod sparse;
mod string;
mod sum;
mod term;
mod walsh;

pub use builders::{
    build_a, build_adag_a, build_h0, build_h0_squared, TightBindingSystem, DEFAULT_REL_THRESHOLD,
};
pub use sparse::SparseOperator;
pub use string::{i_pow, Pauli, PauliString};
pub use sum::{term_to_dense, OperatorSum, DENSE_QUBIT_LIMIT};
pub use term::{OperatorTerm, Projector};
pub use walsh::{
    decompose_diagonal, fwht_in_place, shift_conjugate_diagonal, shift_conjugate_diagonal_range,
    DiagonalDecomposition, SplitDiagonal,
};

#[cfg(test)]
mod tests;
